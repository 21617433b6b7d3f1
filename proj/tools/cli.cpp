#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "config.hpp"
#include "logasm/additive.hpp"
#include "logasm/csv.hpp"
#include "logasm/dist.hpp"
#include "logasm/errors.hpp"
#include "logasm/feller.hpp"
#include "logasm/lil.hpp"
#include "logasm/model.hpp"
#include "logasm/partitions.hpp"
#include "logasm/sampler.hpp"
#include "logasm/series.hpp"
#include "logasm/strassen.hpp"
#include "logasm/verify.hpp"
#include "svg.hpp"

namespace logasm::cli {

namespace {

// Verification failed; the report has been written.
struct VerificationFailure {};

struct Flag {
  const char* key;
  const char* name;
  const char* help;
};

const Flag kCommonFlags[] = {
    {"spec", "--spec", "assembly: permutations, set-partitions, ewens:<theta>, ewens, explicit"},
    {"theta", "--theta", "Ewens parameter when --spec ewens"},
    {"u", "--u", "Poissonization scale (default 1)"},
    {"n", "--n", "level n"},
    {"r", "--r", "truncation index r (tv-scan: comma-separated list)"},
    {"seed", "--seed", "master seed (default 0)"},
    {"replicas", "--replicas", "number of replicas / draws / instances"},
    {"backend", "--backend", "exact | float | auto (default exact)"},
    {"out", "--out", "CSV output path (default stdout)"},
    {"svg", "--svg", "SVG output path"},
};

struct Command {
  const char* name;
  const char* help;
  std::vector<Flag> extra;
  std::function<int(const ResolvedConfig&, std::ostream&)> body;
};

CsvProvenance provenance(const ResolvedConfig& cfg,
                         std::vector<std::pair<std::string, std::string>> extra = {}) {
  return {LOGASM_VERSION, cfg.spec_text, cfg.seed, cfg.backend_text, std::move(extra)};
}

std::size_t need_n(const ResolvedConfig& cfg) {
  if (!cfg.n) throw ConfigError("missing required parameter 'n'");
  return *cfg.n;
}

std::vector<std::size_t> count_list(const ResolvedConfig& cfg, const std::string& key) {
  std::vector<std::size_t> out;
  const auto text = cfg.text(key);
  if (!text) return out;
  std::istringstream in(*text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("'" + key + "' must be a comma-separated list of integers");
    }
  }
  return out;
}

std::string str(double v) { return format_double(v); }
std::string str(std::size_t v) { return std::to_string(v); }

AdditiveFunction additive_from(const ResolvedConfig& cfg, std::size_t n) {
  const double a = cfg.real("a").value_or(1.0);
  return AdditiveFunction::constant(a, n);
}

void write_svg(const ResolvedConfig& cfg, const std::string& title,
               const std::vector<SvgSeries>& series) {
  if (cfg.svg.empty()) return;
  std::ofstream file(cfg.svg);
  if (!file) throw ConfigError("cannot write '" + cfg.svg + "'");
  write_line_chart(file, title, series);
}

// ---- subcommands --------------------------------------------------------

int cmd_count(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"n", "count"});
  csv.row({str(n), total_count(cfg.spec, n).get_str()});
  return kExitOk;
}

int cmd_rates(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const RateSequence rates = derive_rates(cfg.spec, n, cfg.backend);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"j", "lambda", "lambda_float"});
  for (std::size_t j = 1; j <= n; ++j) {
    csv.row({str(j), rates.has_exact() ? rates.exact_rate(j).get_str() : str(rates.rate(j)),
             str(rates.rate(j))});
  }
  return kExitOk;
}

int cmd_check_log(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const auto lo = cfg.rational("theta_lo");
  const auto hi = cfg.rational("theta_hi");
  if (!lo || !hi) throw ConfigError("check-log needs --theta-lo and --theta-hi");
  const RateSequence rates = derive_rates(cfg.spec, n, cfg.backend);
  const auto verdict = check_weakly_logarithmic(rates, *lo, *hi);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"n", "theta_lo", "theta_hi", "pass", "first_violation", "bound"});
  const char* bound = verdict.bound == WeaklyLogVerdict::Bound::lower   ? "lower"
                      : verdict.bound == WeaklyLogVerdict::Bound::upper ? "upper"
                                                                        : "";
  csv.row({str(n), lo->get_str(), hi->get_str(), verdict.pass ? "true" : "false",
           verdict.pass ? "" : str(verdict.index), bound});
  if (!verdict.pass) throw VerificationFailure{};
  return kExitOk;
}

int cmd_law(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const Rational total = total_count(cfg.spec, n);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"vector", "probability", "probability_float"});
  for (const auto& s : enumerate_level(n)) {
    const Rational p = exact_law(cfg.spec, s, total);
    csv.row({s.to_csv(), p.get_str(), str(to_double(p))});
  }
  return kExitOk;
}

int cmd_tv(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const std::size_t r = cfg.require_count("r");
  const RateSequence rates = derive_rates(cfg.spec, n, cfg.backend);
  const TvResult tv = tv_truncated(rates, n, r, cfg.backend);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"n", "r", "tv", "backend"});
  csv.row({str(n), str(r), str(tv.distance), std::string(to_string(tv.backend))});
  return kExitOk;
}

int cmd_tv_scan(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  std::vector<std::size_t> r_list = count_list(cfg, "r");
  if (r_list.empty()) {
    for (std::size_t r = 1; r <= n / 4; r *= 2) r_list.push_back(r);
  }
  const RateSequence rates = derive_rates(cfg.spec, n, BackendChoice::floating);
  double theta_lo = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double v = static_cast<double>(j) * rates.rate(j);
    theta_lo = j == 1 ? v : std::min(theta_lo, v);
  }
  const FlScan scan = fl_scan(cfg.spec, n, r_list, theta_lo, cfg.backend);
  CsvWriter csv(out);
  csv.header(provenance(cfg, {{"theta_lo", str(theta_lo)},
                              {"c1", str(scan.exponents.c1)},
                              {"c_fit", str(scan.c_fit)},
                              {"slope", str(scan.slope)}}));
  csv.row({"n", "r", "tv", "bound", "backend"});
  SvgSeries tv_line;
  SvgSeries bound_line{{}, {}, "#d62728", true};
  for (const auto& row : scan.rows) {
    csv.row({str(row.n), str(row.r), str(row.tv), str(row.bound), std::string(to_string(row.backend))});
    if (row.tv > 0.0) {
      const double x = std::log(static_cast<double>(row.r) / static_cast<double>(row.n));
      tv_line.x.push_back(x);
      tv_line.y.push_back(std::log(row.tv));
      bound_line.x.push_back(x);
      bound_line.y.push_back(std::log(row.bound));
    }
  }
  write_svg(cfg, "log tv against log(r/n), with the fitted power bound", {tv_line, bound_line});
  return kExitOk;
}

int cmd_sample(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const std::size_t draws = cfg.count("replicas").value_or(1);
  const std::string method = cfg.text("method").value_or("sequential");
  const RateSequence rates = derive_rates(cfg.spec, n, BackendChoice::floating);
  CsvWriter csv(out);
  csv.header(provenance(cfg, {{"n", str(n)}, {"method", method}}));
  Rng rng(cfg.seed);
  if (method == "sequential") {
    const SequentialSampler sampler(rates, n);
    for (std::size_t i = 0; i < draws; ++i) out << sampler.sample(rng).to_csv() << '\n';
  } else if (method == "rejection") {
    const std::uint64_t budget = cfg.count("cap").value_or(100'000'000);
    for (std::size_t i = 0; i < draws; ++i) {
      out << sample_rejection(rates, n, rng, budget).vector.to_csv() << '\n';
    }
  } else if (method == "component") {
    const ComponentSizeSampler sampler(rates, n);
    for (std::size_t i = 0; i < draws; ++i) out << sampler.sample(rng).to_csv() << '\n';
  } else {
    throw ConfigError("'method' must be sequential, rejection or component");
  }
  return kExitOk;
}

int cmd_lil(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const std::size_t n1 = cfg.count("n1").value_or((n + 9) / 10);
  const std::size_t replicas = cfg.count("replicas").value_or(100);
  LilOptions options;
  if (const auto tol = cfg.real("tol")) options.tol = *tol;
  options.keep_paths = cfg.svg.empty() ? 0 : std::min<std::size_t>(replicas, 20);
  const AdditiveFunction h = additive_from(cfg, n);
  const LilSummary s = lil_experiment(cfg.spec, h, n, n1, replicas, cfg.seed, options);
  CsvWriter csv(out);
  csv.header(provenance(cfg, {{"n", str(n)},
                              {"n1", str(n1)},
                              {"a", str(cfg.real("a").value_or(1.0))},
                              {"condition6", str(s.condition6)},
                              {"median_max_distance", str(s.median_max_distance)},
                              {"fraction_outside_interval", str(s.fraction_outside_interval)},
                              {"fraction_outside_disk", str(s.fraction_outside_disk)},
                              {"mean_form_gap", str(s.mean_form_gap)}}));
  csv.row({"replica", "max_distance", "argmax_m", "U_half", "U_one", "form_gap"});
  for (std::size_t r = 0; r < s.replicas.size(); ++r) {
    const auto& row = s.replicas[r];
    csv.row({str(r), str(row.max_distance), str(row.argmax), str(row.midpoint),
             str(row.endpoint), str(row.form_gap)});
  }
  if (!cfg.svg.empty()) {
    std::vector<SvgSeries> series;
    for (const auto& path : s.paths) {
      series.push_back({{path.breakpoints().begin(), path.breakpoints().end()},
                        {path.values().begin(), path.values().end()}, "#1f77b4", false, 0.4});
    }
    // Boundary of K in the sup sense (|g(t)| <= sqrt t) and the extremal
    // functions g1, g2.
    SvgSeries upper{{}, {}, "#d62728", true};
    SvgSeries lower{{}, {}, "#d62728", true};
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      upper.x.push_back(t);
      upper.y.push_back(std::sqrt(t));
      lower.x.push_back(t);
      lower.y.push_back(-std::sqrt(t));
    }
    series.push_back(upper);
    series.push_back(lower);
    series.push_back({{0.0, 0.5, 1.0}, {0.0, std::sqrt(0.5), std::sqrt(0.5)}, "#2ca02c", false});
    series.push_back({{0.0, 0.5, 1.0}, {0.0, 0.5, 0.0}, "#9467bd", false});
    write_svg(cfg, "U_n sample paths with the envelope of K and g1, g2", series);
  }
  return kExitOk;
}

int cmd_feller(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t J = cfg.count("J").value_or(1000);
  const unsigned s = static_cast<unsigned>(cfg.count("s").value_or(2));
  const double x = cfg.real("x").value_or(0.5);
  const RateSequence rates = derive_rates(cfg.spec, J, BackendChoice::floating);
  const AdditiveFunction h = additive_from(cfg, J);
  const FellerReport report = feller_terms(h, rates, PhiSpec::ladder(s, x), J);
  CsvWriter csv(out);
  csv.header(provenance(cfg, {{"J", str(J)},
                              {"s", str(std::size_t{s})},
                              {"x", str(x)},
                              {"verdict", to_string(report.verdict)},
                              {"condition9", str(report.condition9)}}));
  csv.row({"j", "phi", "term", "partial_sum"});
  for (std::size_t j = 1; j <= J; ++j) {
    csv.row({str(j), str(report.phi[j - 1]), str(report.terms[j - 1]),
             str(report.partial_sums[j - 1])});
  }
  return kExitOk;
}

int cmd_exceed(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const std::size_t n1 = cfg.count("n1").value_or((n + 9) / 10);
  const std::size_t replicas = cfg.count("replicas").value_or(100);
  const unsigned s = static_cast<unsigned>(cfg.count("s").value_or(2));
  const double eps = cfg.real("eps").value_or(0.5);
  const AdditiveFunction h = additive_from(cfg, n);
  const RateSequence rates = derive_rates(cfg.spec, n, BackendChoice::floating);
  const auto psi = gamma_threshold(centering_profile(h, rates, n), s, eps);
  const ExceedanceEstimate e = exceedance_scan(cfg.spec, h, psi, n, n1, replicas, cfg.seed);
  CsvWriter csv(out);
  csv.header(provenance(cfg, {{"n", str(n)}, {"n1", str(n1)}, {"s", str(std::size_t{s})}, {"eps", str(eps)}}));
  csv.row({"replicas", "hits", "estimate", "standard_error"});
  csv.row({str(e.replicas), str(e.hits), str(e.estimate), str(e.standard_error)});
  return kExitOk;
}

int cmd_ruzsa(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t instances = cfg.count("replicas").value_or(200);
  const std::size_t n_max = cfg.n.value_or(8);
  const auto suite = ruzsa_random_suite(instances, cfg.seed, n_max);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"instance", "family", "n", "U_size", "theta", "lhs", "complement_upper", "C", "rhs",
           "rhs_theta_prime", "pass"});
  bool all = true;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& inst = suite[i];
    const auto& r = inst.report;
    all = all && r.pass;
    csv.row({str(i), inst.family, str(inst.n), str(inst.U.size()), str(r.theta), str(r.lhs),
             str(r.complement_upper), str(r.constants.C), str(r.rhs), str(r.rhs_theta_prime),
             r.pass ? "true" : "false"});
  }
  if (!all) throw VerificationFailure{};
  return kExitOk;
}

PolygonalPath parse_path(const std::string& text) {
  // "t:y,t:y,..." with the leading (0,0) implied when absent.
  std::vector<double> t{0.0};
  std::vector<double> y{0.0};
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("path points must look like t:y");
    const double ti = to_double(parse_rational(item.substr(0, colon)));
    const double yi = to_double(parse_rational(item.substr(colon + 1)));
    if (ti == 0.0) {
      if (yi != 0.0) throw ConfigError("path must start at 0");
      continue;
    }
    t.push_back(ti);
    y.push_back(yi);
  }
  return PolygonalPath(std::move(t), std::move(y));
}

int cmd_strassen(const ResolvedConfig& cfg, std::ostream& out) {
  const auto text = cfg.text("path");
  if (!text) throw ConfigError("strassen needs --path t:y,t:y,...");
  const PolygonalPath path = parse_path(*text);
  const double tol = cfg.real("tol").value_or(1e-9);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"points", "sup_norm", "distance", "tol"});
  csv.row({str(path.size()), str(path.sup_norm()), str(strassen_distance(path, tol)), str(tol)});
  return kExitOk;
}

int cmd_prop1(const ResolvedConfig& cfg, std::ostream& out) {
  const std::size_t n = need_n(cfg);
  const std::size_t r = cfg.count("r").value_or(0);
  const std::size_t m = cfg.count("m").value_or(n);
  const double eta = cfg.real("eta").value_or(0.0);
  const double delta = cfg.real("delta").value_or(0.25);
  std::vector<Rational> d(n);
  if (const auto constant = cfg.rational("d")) {
    std::fill(d.begin(), d.end(), *constant);
  } else {
    const RateSequence rates = derive_rates(cfg.spec, n, BackendChoice::exact);
    for (std::size_t j = 1; j <= n; ++j) d[j - 1] = rates.exact_rate(j) * static_cast<unsigned long>(j);
  }
  const Prop1Report rep = proposition1_check(d, n, r, m, eta, delta, cfg.backend);
  CsvWriter csv(out);
  csv.header(provenance(cfg));
  csv.row({"n", "r", "m", "eta", "delta", "ratio_minus_one", "bound", "c", "backend"});
  csv.row({str(n), str(r), str(m), str(eta), str(delta), str(rep.ratio_minus_one), str(rep.bound),
           str(rep.c), std::string(to_string(rep.backend))});
  return kExitOk;
}

std::vector<Command> commands() {
  return {
      {"count", "total weight W_n of the level-n assemblies", {}, cmd_count},
      {"rates", "Poisson rates lambda_j", {}, cmd_rates},
      {"check-log", "check theta_lo/j <= lambda_j <= theta_hi/j",
       {{"theta_lo", "--theta-lo", "lower constant"}, {"theta_hi", "--theta-hi", "upper constant"}},
       cmd_check_log},
      {"law", "exact law of the component vector", {}, cmd_law},
      {"tv", "total variation distance of the first r counts", {}, cmd_tv},
      {"tv-scan", "distance against r/n with the power-law fit", {}, cmd_tv_scan},
      {"sample", "draw component vectors",
       {{"method", "--method", "sequential | rejection | component"},
        {"cap", "--max-attempts", "rejection budget"}},
       cmd_sample},
      {"lil", "distance of U_m to the Strassen set, Monte Carlo",
       {{"n1", "--n1", "smallest m (default n/10)"},
        {"a", "--a", "constant a_j (default 1)"},
        {"tol", "--tol", "distance accuracy"}},
       cmd_lil},
      {"feller", "terms and classification of the Feller series",
       {{"J", "--J", "number of terms (>= 10)"},
        {"s", "--s", "ladder order (>= 2)"},
        {"x", "--x", "ladder exponent"},
        {"a", "--a", "constant a_j (default 1)"}},
       cmd_feller},
      {"exceed", "exceedance probability for psi = B gamma_s(eps)",
       {{"n1", "--n1", "smallest m (default n/10)"},
        {"s", "--s", "ladder order"},
        {"eps", "--eps", "ladder offset"},
        {"a", "--a", "constant a_j (default 1)"}},
       cmd_exceed},
      {"ruzsa", "randomized extension-set inequality suite (n = largest n)", {}, cmd_ruzsa},
      {"strassen", "distance of a polygonal path to the Strassen set",
       {{"path", "--path", "t:y,t:y,... on (0, 1]"}, {"tol", "--tol", "accuracy"}},
       cmd_strassen},
      {"prop1", "coefficient ratio F_m/(e_r D_n) - 1 and its bound",
       {{"m", "--m", "coefficient index (default n)"},
        {"eta", "--eta", "regime eta"},
        {"delta", "--delta", "regime delta"},
        {"d", "--d", "constant d_j (default j lambda_j)"}},
       cmd_prop1},
  };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"logasm: component statistics of weakly logarithmic assemblies", "logasm"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", LOGASM_VERSION);

  const auto cmds = commands();
  std::map<std::string, std::string> values;  // key -> flag text
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  std::vector<CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "key: value settings file");
    const auto add = [&](const Flag& f) {
      const std::string key = std::string(cmd.name) + "/" + f.key;
      options[key] = sub->add_option(f.name, values[key], f.help);
    };
    for (const auto& f : kCommonFlags) add(f);
    for (const auto& f : cmd.extra) add(f);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LOGASM_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const Command& cmd = cmds[i];
    try {
      Settings settings = config_path.empty() ? Settings{} : read_settings(config_path);
      const std::string prefix = std::string(cmd.name) + "/";
      for (const auto& [key, opt] : options) {
        if (key.rfind(prefix, 0) == 0 && opt->count() > 0) {
          settings.set(key.substr(prefix.size()), values[key]);
        }
      }
      const ResolvedConfig cfg = resolve(std::move(settings));
      if (cfg.out.empty()) return cmd.body(cfg, out);
      std::ofstream file(cfg.out);
      if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
      return cmd.body(cfg, file);
    } catch (const VerificationFailure&) {
      err << "verification failed\n";
      return kExitVerification;
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace logasm::cli
