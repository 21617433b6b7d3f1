#include "logasm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <mpfr.h>

#include "logasm/dist.hpp"
#include "logasm/errors.hpp"
#include "logasm/partitions.hpp"
#include "logasm/rng.hpp"
#include "logasm/series.hpp"

namespace logasm {

namespace {

bool disjoint(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

// t3 || t2: t3 <= t2 and t3 disjoint from t2 - t3, i.e. on every
// coordinate t3 is either 0 or equal to t2.
bool enters_exactly(std::span<const std::uint32_t> t3, std::span<const std::uint32_t> t2) {
  for (std::size_t i = 0; i < t3.size(); ++i) {
    if (t3[i] != 0 && t3[i] != t2[i]) return false;
  }
  return true;
}

std::size_t common_dimension(std::span<const ComponentVector> U) {
  if (U.empty()) return 0;
  const std::size_t n = U.front().dimension();
  for (const auto& t : U) {
    if (t.dimension() != n) throw DimensionMismatchError("elements of U differ in dimension");
  }
  return n;
}

double poisson_mass(double lambda, std::uint32_t k) {
  return std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

double product_mass(const RateSequence& rates, const ComponentVector& t) {
  double p = 1.0;
  for (std::size_t j = 1; j <= t.dimension(); ++j) p *= poisson_mass(rates.rate(j), t.count(j));
  return p;
}

// mu_n(s) over the level set, normalized by the enumerated total.
std::vector<double> level_law(const RateSequence& rates, const std::vector<ComponentVector>& level) {
  std::vector<double> w;
  w.reserve(level.size());
  double total = 0.0;
  for (const auto& s : level) {
    double log_w = 0.0;
    for (std::size_t j = 1; j <= s.dimension(); ++j) {
      const double c = s.count(j);
      if (c) log_w += c * std::log(rates.rate(j)) - std::lgamma(c + 1.0);
    }
    w.push_back(std::exp(log_w));
    total += w.back();
  }
  for (double& x : w) x /= total;
  return w;
}

// Calls f on every vector of {0..cap}^n.
template <class F>
void for_each_in_box(std::size_t n, std::uint32_t cap, F&& f) {
  std::vector<std::uint32_t> counts(n, 0);
  while (true) {
    f(ComponentVector(counts));
    std::size_t i = 0;
    while (i < n && counts[i] == cap) counts[i++] = 0;
    if (i == n) return;
    ++counts[i];
  }
}

void check_box(std::size_t n, std::uint32_t cap) {
  const double points = std::pow(static_cast<double>(cap) + 1.0, static_cast<double>(n));
  if (points > 2e7) throw CostGuardError("box {0..cap}^n is too large to enumerate");
}

void check_ruzsa_inputs(const RateSequence& rates, std::size_t n, double theta_prime) {
  if (n == 0) throw ArgumentError("n must be positive");
  if (n > kRuzsaMaxN) {
    throw CostGuardError("ruzsa_check enumerates level sets only for n <= " +
                         std::to_string(kRuzsaMaxN));
  }
  if (rates.size() < n) throw BoundsError("fewer than n rates");
  if (!(theta_prime > 0.0)) throw ArgumentError("theta' must be positive");
}

void finish(RuzsaReport& report, std::size_t n) {
  const auto& k = report.constants;
  const double power = std::pow(std::max(report.complement_upper, 0.0), report.theta);
  const double tail = k.C1 * k.C2 / report.theta;
  const bool fractional = report.theta < 1.0;
  const double nn = static_cast<double>(n);
  report.rhs = k.C * power + (fractional ? tail * std::pow(nn, -report.theta) : 0.0);
  report.rhs_theta_prime =
      k.C * power + (fractional ? tail * std::pow(nn, -report.theta_prime) : 0.0);
  report.pass = report.lhs <= report.rhs;
}

RuzsaReport start_report(const RateSequence& rates, std::size_t n, double theta_prime) {
  RuzsaReport report;
  report.theta_prime = theta_prime;
  report.theta = std::min(1.0, theta_prime);
  report.constants = lemma8_constants(poisson_pmf_table(rates, n), n, report.theta);
  return report;
}

}  // namespace

std::vector<ComponentVector> extension_set(std::span<const ComponentVector> U) {
  const std::size_t n = common_dimension(U);
  std::set<ComponentVector> out;
  std::vector<std::uint32_t> d(n);
  for (const auto& t2 : U) {
    for (const auto& t3 : U) {
      if (!enters_exactly(t3.counts(), t2.counts())) continue;
      for (std::size_t i = 0; i < n; ++i) d[i] = t2.counts()[i] - t3.counts()[i];
      for (const auto& t1 : U) {
        if (!disjoint(t1.counts(), d)) continue;
        std::vector<std::uint32_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = t1.counts()[i] + d[i];
        out.insert(ComponentVector(std::move(v)));
      }
    }
  }
  return {out.begin(), out.end()};
}

bool in_extension(std::span<const ComponentVector> U, const ComponentVector& s) {
  const std::size_t n = common_dimension(U);
  if (U.empty()) return false;
  if (s.dimension() != n) throw DimensionMismatchError("s differs in dimension from U");
  const auto contains = [&](const ComponentVector& v) {
    return std::binary_search(U.begin(), U.end(), v);
  };
  std::vector<std::uint32_t> d(n);
  std::vector<std::uint32_t> t1(n);
  for (const auto& t2 : U) {
    for (const auto& t3 : U) {
      if (!enters_exactly(t3.counts(), t2.counts())) continue;
      bool fits = true;
      for (std::size_t i = 0; i < n && fits; ++i) {
        d[i] = t2.counts()[i] - t3.counts()[i];
        if (d[i] && d[i] != s.counts()[i]) fits = false;
        t1[i] = d[i] ? 0 : s.counts()[i];
      }
      if (fits && contains(ComponentVector(t1))) return true;
    }
  }
  return false;
}

bool in_extension(const VectorPredicate& in_u, const ComponentVector& s, std::uint32_t cap) {
  const std::size_t n = s.dimension();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.counts()[i]) support.push_back(i);
  }
  // d = 0: t1 = s and t2 = t3 = s.
  if (in_u(s)) return true;
  const std::size_t subsets = std::size_t{1} << support.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<std::uint32_t> d(n, 0);
    std::vector<std::uint32_t> t1(s.counts().begin(), s.counts().end());
    std::vector<std::size_t> free;
    for (std::size_t b = 0; b < support.size(); ++b) {
      if (mask >> b & 1) {
        d[support[b]] = s.counts()[support[b]];
        t1[support[b]] = 0;
      }
    }
    if (!in_u(ComponentVector(t1))) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i]) free.push_back(i);
    }
    // t3 ranges over the box on the coordinates outside supp(d).
    std::vector<std::uint32_t> t3(n, 0);
    while (true) {
      std::vector<std::uint32_t> t2(n);
      for (std::size_t i = 0; i < n; ++i) t2[i] = t3[i] + d[i];
      if (in_u(ComponentVector(t3)) && in_u(ComponentVector(t2))) return true;
      std::size_t k = 0;
      while (k < free.size() && t3[free[k]] == cap) t3[free[k++]] = 0;
      if (k == free.size()) break;
      ++t3[free[k]];
    }
  }
  return false;
}

PmfTable poisson_pmf_table(const RateSequence& rates, std::size_t n, std::size_t k_max) {
  if (rates.size() < n) throw BoundsError("fewer than n rates");
  PmfTable table;
  table.rows.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t top = std::max(n / j, k_max);
    auto& row = table.rows[j - 1];
    row.resize(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
      row[k] = poisson_mass(rates.rate(j), static_cast<std::uint32_t>(k));
    }
  }
  return table;
}

Lemma8Constants lemma8_constants(const PmfTable& p, std::size_t n, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ArgumentError("theta must lie in (0, 1]");
  if (n == 0) throw ArgumentError("n must be positive");
  if (p.size() < n) throw BoundsError("pmf table has fewer than n rows");

  Lemma8Constants k;
  k.theta = theta;
  k.c2 = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    if (p.p(j, 0) < k.c2) {
      k.c2 = p.p(j, 0);
      k.c2_index = j;
    }
  }
  if (!(k.c2 > 0.0)) throw ConditionViolation("p_j(0) = 0 violates condition (i)", k.c2_index);

  // P(Z(m)) = P(sum_j j xi_j = m) over the n coordinates.
  std::vector<double> mass(n + 1, 0.0);
  mass[0] = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<double> next(n + 1, 0.0);
    for (std::size_t m = 0; m <= n; ++m) {
      if (mass[m] == 0.0) continue;
      for (std::size_t c = 0; m + c * j <= n; ++c) next[m + c * j] += mass[m] * p.p(j, c);
    }
    mass = std::move(next);
  }
  k.Pn = mass[n];
  if (!(k.Pn > 0.0)) throw ConditionViolation("P(Z(n)) = 0 violates condition (iii)", n);
  k.c3 = static_cast<double>(n) * k.Pn;

  const double nn = static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double v = mass[m] * std::pow((static_cast<double>(m) + 1.0) / nn, 1.0 - theta) / k.Pn;
    if (v > k.C1) {
      k.C1 = v;
      k.C1_index = m;
    }
  }
  for (std::size_t m = 1; m <= n; ++m) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= std::min(m, n); ++j) {
      if (m % j == 0) sum += p.p(j, m / j) / p.p(j, 0);
    }
    const double v = static_cast<double>(m) * sum;
    if (v > k.C2) {
      k.C2 = v;
      k.C2_index = m;
    }
  }
  k.C = std::max(32.0 / (k.c2 * k.c2), k.C2 / k.c3 + 4.0 * k.C1 / k.c2 + k.C1 * k.C2 / theta);
  k.level_mass = std::move(mass);
  return k;
}

RuzsaReport ruzsa_check(const RateSequence& rates, std::size_t n,
                        std::span<const ComponentVector> U, double theta_prime) {
  check_ruzsa_inputs(rates, n, theta_prime);
  for (const auto& t : U) {
    if (t.dimension() != n) throw DimensionMismatchError("elements of U must have dimension n");
  }
  std::vector<ComponentVector> sorted(U.begin(), U.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  RuzsaReport report = start_report(rates, n, theta_prime);
  double in_u = 0.0;
  for (const auto& t : sorted) in_u += product_mass(rates, t);
  report.complement_lower = report.complement_upper = std::max(0.0, 1.0 - in_u);

  const auto level = enumerate_level(n);
  const auto law = level_law(rates, level);
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (in_extension(sorted, level[i])) {
      ++report.level_in_v;
    } else {
      report.lhs += law[i];
    }
  }
  finish(report, n);
  return report;
}

RuzsaReport ruzsa_check(const RateSequence& rates, std::size_t n, const VectorPredicate& in_u,
                        std::uint32_t cap, double theta_prime) {
  check_ruzsa_inputs(rates, n, theta_prime);
  check_box(n, cap);
  RuzsaReport report = start_report(rates, n, theta_prime);
  double outside_u_in_box = 0.0;
  for_each_in_box(n, cap, [&](const ComponentVector& t) {
    if (!in_u(t)) outside_u_in_box += product_mass(rates, t);
  });
  double box = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    double cdf = 0.0;
    for (std::uint32_t k = 0; k <= cap; ++k) cdf += poisson_mass(rates.rate(j), k);
    box *= std::min(cdf, 1.0);
  }
  report.complement_lower = outside_u_in_box;
  report.complement_upper = std::min(1.0, outside_u_in_box + std::max(0.0, 1.0 - box));

  const auto level = enumerate_level(n);
  const auto law = level_law(rates, level);
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (in_extension(in_u, level[i], cap)) {
      ++report.level_in_v;
    } else {
      report.lhs += law[i];
    }
  }
  finish(report, n);
  return report;
}

std::vector<RuzsaInstance> ruzsa_random_suite(std::size_t instances, std::uint64_t seed,
                                              std::size_t n_max) {
  if (n_max == 0 || n_max > kRuzsaMaxN) throw ArgumentError("n_max must lie in 1..12");
  std::vector<RuzsaInstance> out(instances);
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng = Rng::stream(seed, i);
    const auto below = [&](std::uint64_t k) { return rng.next() % k; };
    RuzsaInstance& inst = out[i];
    inst.n = 1 + below(n_max);
    const std::size_t n = inst.n;

    std::vector<Rational> rates(n);
    static const char* const families[] = {"permutations", "ewens:1/2", "ewens:3/2", "ewens:2",
                                           "random"};
    inst.family = families[below(5)];
    if (inst.family == "random") {
      for (std::size_t j = 1; j <= n; ++j) {
        Rational theta_j(static_cast<long>(2 + below(7)), 4L);  // 1/2 .. 2
        theta_j.canonicalize();
        rates[j - 1] = theta_j / static_cast<unsigned long>(j);
      }
    } else {
      const auto spec = AssemblySpec::from_name(inst.family);
      const auto derived = derive_rates(spec, n, BackendChoice::exact);
      for (std::size_t j = 1; j <= n; ++j) rates[j - 1] = derived.exact_rate(j);
    }
    double theta_prime = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = static_cast<double>(j) * to_double(rates[j - 1]);
      theta_prime = j == 1 ? v : std::min(theta_prime, v);
    }

    const std::size_t size = 1 + below(12);
    for (std::size_t k = 0; k < size; ++k) {
      if (below(2)) {
        const std::size_t m = below(n + 1);
        const auto level = enumerate_level(m);
        std::vector<std::uint32_t> v(n, 0);
        const auto& pick = level[below(level.size())];
        for (std::size_t j = 1; j <= m; ++j) v[j - 1] = pick.count(j);
        inst.U.emplace_back(std::move(v));
      } else {
        std::vector<std::uint32_t> v(n);
        for (auto& c : v) c = static_cast<std::uint32_t>(below(3));
        inst.U.emplace_back(std::move(v));
      }
    }
    inst.report = ruzsa_check(RateSequence(std::move(rates)), n, inst.U, theta_prime);
  }
  return out;
}

RuzsaIntervalReport ruzsa_interval_check(const RateSequence& rates, std::size_t n,
                                         const AdditiveFunction& h, double a, double u,
                                         std::uint32_t cap, double theta_prime) {
  if (!(u >= 0.0)) throw ArgumentError("u must be nonnegative");
  const auto H = [&](const ComponentVector& t) { return partial_value(h, t, t.dimension()); };
  const VectorPredicate in_u = [&](const ComponentVector& t) {
    return std::abs(H(t) - a) < u / 3.0;
  };
  RuzsaIntervalReport out;
  out.extension = ruzsa_check(rates, n, in_u, cap, theta_prime);
  const auto level = enumerate_level(n);
  const auto law = level_law(rates, level);
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (std::abs(H(level[i]) - a) >= u) out.lhs += law[i];
  }
  out.pass = out.extension.pass && out.lhs <= out.extension.rhs;
  return out;
}

namespace {

// q exp(h) - 1 for exact q and h. The difference can sit far below double
// resolution (d = 1 gives values near 1e-150 at n = 100), so the working
// precision doubles until the result clears the rounding floor by 64 bits.
double ratio_minus_one_mpfr(const Rational& q, const Rational& h) {
  for (mpfr_prec_t prec = 256;; prec *= 2) {
    mpfr_t a, b;
    mpfr_init2(a, prec);
    mpfr_init2(b, prec);
    mpfr_set_q(b, h.get_mpq_t(), MPFR_RNDN);
    mpfr_exp(b, b, MPFR_RNDN);
    mpfr_set_q(a, q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(a, a, b, MPFR_RNDN);
    mpfr_sub_ui(a, a, 1, MPFR_RNDN);
    const bool zero = mpfr_zero_p(a) != 0;
    const long exponent = zero ? 0 : mpfr_get_exp(a);
    const double value = mpfr_get_d(a, MPFR_RNDN);
    mpfr_clear(a);
    mpfr_clear(b);
    if (zero && sgn(q) > 0 && prec < 16384) {
      // q exp(h) = 1 exactly only when h = 0 and q = 1.
      if (sgn(h) == 0 && q == 1) return 0.0;
      continue;
    }
    if (zero || exponent > -static_cast<long>(prec) + 64 || prec >= 16384) return value;
  }
}

}  // namespace

Prop1Report proposition1_check(std::span<const Rational> d, std::size_t n, std::size_t r,
                               std::size_t m, double eta, double delta, BackendChoice backend) {
  if (n == 0) throw ArgumentError("n must be positive");
  if (d.size() < n) throw BoundsError("need d_1..d_n");
  const double nn = static_cast<double>(n);
  if (!(eta >= 0.0 && eta <= 0.5)) throw RegimeError("eta must lie in [0, 1/2]");
  if (!(delta >= 1.0 / nn && delta <= 0.5)) throw RegimeError("delta must lie in [1/n, 1/2]");
  if (static_cast<double>(r) > delta * nn) throw RegimeError("r exceeds delta n");
  if (m > n || static_cast<double>(m) < nn * (1.0 - eta)) {
    throw RegimeError("m must lie in [n(1 - eta), n]");
  }
  double d_lo = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(d[j]) <= 0) throw ArgumentError("d_j must be positive");
    const double v = to_double(d[j]);
    d_lo = j == 0 ? v : std::min(d_lo, v);
  }

  Prop1Report out;
  out.c = contour_exponent(d_lo);
  long double log_e = 0.0L;
  for (std::size_t j = 1; j <= r; ++j) {
    log_e -= static_cast<long double>(to_double(d[j - 1])) / static_cast<long double>(j);
  }
  out.e_r = static_cast<double>(std::exp(log_e));
  out.bound = (eta + (r >= 1 ? static_cast<double>(r) / nn : 0.0)) / delta + std::pow(delta, out.c);

  const bool exact = backend == BackendChoice::exact ||
                     (backend == BackendChoice::automatic && n <= kExactLimit);
  out.backend = exact ? Backend::exact : Backend::floating;
  if (exact) {
    std::vector<Rational> g(n + 1, 0);
    for (std::size_t j = 1; j <= n; ++j) g[j] = d[j - 1] / Rational(static_cast<unsigned long>(j));
    const ExactSeries D = exp_series(ExactSeries(g), n);
    Rational head = 0;  // -log e_r
    for (std::size_t j = 1; j <= r; ++j) {
      head += g[j];
      g[j] = 0;
    }
    const ExactSeries F = exp_series(ExactSeries(g), n);
    Rational quotient = F[m] / D[n];
    quotient.canonicalize();
    out.ratio_minus_one = ratio_minus_one_mpfr(quotient, head);
  } else {
    std::vector<double> g(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) g[j] = to_double(d[j - 1]) / static_cast<double>(j);
    const FloatSeries D = exp_series(FloatSeries(g), n);
    for (std::size_t j = 1; j <= r; ++j) g[j] = 0.0;
    const FloatSeries F = exp_series(FloatSeries(g), n);
    const long double quotient = static_cast<long double>(F[m]) / static_cast<long double>(D[n]);
    out.ratio_minus_one = static_cast<double>(quotient * std::exp(-log_e) - 1.0L);
  }
  return out;
}

}  // namespace logasm
