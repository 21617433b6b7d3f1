#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "logasm/errors.hpp"

namespace logasm::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "spec", "theta", "u", "n", "r", "n1", "seed", "replicas", "backend", "out", "svg",
      "J", "s", "x", "eps", "m", "eta", "delta", "cap", "method", "a", "d", "tol",
      "theta_lo", "theta_hi", "path", "m_table", "w_table", "count"};
  return keys;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

const std::string* Settings::find(const std::string& key) const {
  const auto it = values.find(key);
  return it == values.end() ? nullptr : &it->second;
}

void Settings::set(const std::string& key, std::string value, std::size_t line) {
  values[key] = std::move(value);
  lines[key] = line;
}

Settings parse_settings(std::istream& in) {
  Settings settings;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("expected 'key: value'", line);
    const std::string key = trim(text.substr(0, colon));
    const std::string value = trim(text.substr(colon + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'", line);
    if (settings.has(key)) {
      throw ConfigError("duplicate key '" + key + "' (first on line " +
                            std::to_string(settings.lines[key]) + ")",
                        line);
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line);
    settings.set(key, value, line);
  }
  return settings;
}

Settings read_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_settings(in);
}

std::optional<std::string> ResolvedConfig::text(const std::string& key) const {
  if (const auto* v = settings.find(key)) return *v;
  return std::nullopt;
}

std::optional<std::size_t> ResolvedConfig::count(const std::string& key) const {
  const auto* v = settings.find(key);
  if (!v) return std::nullopt;
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError("'" + key + "' must be a nonnegative integer, got '" + *v + "'",
                      settings.lines.at(key));
  }
  return out;
}

std::optional<Rational> ResolvedConfig::rational(const std::string& key) const {
  const auto* v = settings.find(key);
  if (!v) return std::nullopt;
  try {
    return parse_rational(*v);
  } catch (const Error& e) {
    throw ConfigError("'" + key + "': " + e.what(), settings.lines.at(key));
  }
}

std::optional<double> ResolvedConfig::real(const std::string& key) const {
  if (const auto q = rational(key)) return to_double(*q);
  return std::nullopt;
}

std::size_t ResolvedConfig::require_count(const std::string& key) const {
  const auto v = count(key);
  if (!v) throw ConfigError("missing required parameter '" + key + "'");
  return *v;
}

ResolvedConfig resolve(Settings settings) {
  ResolvedConfig cfg;
  cfg.settings = std::move(settings);
  const auto line_of = [&](const std::string& key) {
    const auto it = cfg.settings.lines.find(key);
    return it == cfg.settings.lines.end() ? std::size_t{0} : it->second;
  };

  if (const auto u = cfg.rational("u")) {
    if (sgn(*u) <= 0) throw ConfigError("'u' must be positive", line_of("u"));
    cfg.u = *u;
  }
  if (const auto n = cfg.count("n")) {
    if (*n == 0) throw ConfigError("'n' must be positive", line_of("n"));
    cfg.n = n;
  }
  if (const auto* seed = cfg.settings.find("seed")) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(seed->data(), seed->data() + seed->size(), value);
    if (ec != std::errc() || ptr != seed->data() + seed->size()) {
      throw ConfigError("'seed' must be an unsigned 64-bit integer", line_of("seed"));
    }
    cfg.seed = value;
  }
  if (const auto* b = cfg.settings.find("backend")) {
    if (*b == "exact") {
      cfg.backend = BackendChoice::exact;
    } else if (*b == "float") {
      cfg.backend = BackendChoice::floating;
    } else if (*b == "auto") {
      cfg.backend = BackendChoice::automatic;
    } else {
      throw ConfigError("'backend' must be exact, float or auto", line_of("backend"));
    }
    cfg.backend_text = *b;
  }
  if (const auto* o = cfg.settings.find("out")) cfg.out = *o;
  if (const auto* s = cfg.settings.find("svg")) cfg.svg = *s;

  const std::string name = cfg.text("spec").value_or("permutations");
  const std::size_t spec_line = line_of("spec");
  try {
    if (name == "ewens") {
      const auto theta = cfg.rational("theta");
      if (!theta) throw ConfigError("spec 'ewens' needs 'theta'", spec_line);
      if (sgn(*theta) <= 0) throw ConfigError("'theta' must be positive", line_of("theta"));
      cfg.spec = AssemblySpec::ewens(*theta);
    } else if (name == "explicit") {
      const auto m_text = cfg.text("m_table");
      if (!m_text) throw ConfigError("spec 'explicit' needs 'm_table'", spec_line);
      std::vector<BigInt> m;
      for (const auto& item : split_list(*m_text)) {
        const Rational q = parse_rational(item);
        if (q.get_den() != 1 || sgn(q) <= 0) {
          throw ConfigError("m_table entries must be positive integers", line_of("m_table"));
        }
        m.push_back(q.get_num());
      }
      std::vector<Rational> w(m.size(), Rational(1));
      if (const auto w_text = cfg.text("w_table")) {
        const auto items = split_list(*w_text);
        if (items.size() != m.size()) {
          throw ConfigError("w_table and m_table differ in length", line_of("w_table"));
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
          w[i] = parse_rational(items[i]);
          if (sgn(w[i]) <= 0) throw ConfigError("w_table entries must be positive", line_of("w_table"));
        }
      }
      cfg.spec = AssemblySpec::explicit_table("explicit", std::move(m), std::move(w));
    } else {
      cfg.spec = AssemblySpec::from_name(name);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), spec_line);
  }
  if (cfg.u != 1) cfg.spec = cfg.spec.with_u(cfg.u);
  cfg.spec_text = cfg.spec.canonical();
  return cfg;
}

ResolvedConfig load_config(const std::string& path) { return resolve(read_settings(path)); }

}  // namespace logasm::cli
