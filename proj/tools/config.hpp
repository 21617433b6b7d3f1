#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "logasm/model.hpp"
#include "logasm/numeric.hpp"

namespace logasm::cli {

// Malformed configuration; `line` is 0 when the problem is not tied to a
// line of a file (e.g. a command-line flag).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raw key/value settings. Files hold one "key: value" per line; blank lines
// and lines starting with '#' are ignored.
struct Settings {
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;  // source line per key (0 = flag)

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string* find(const std::string& key) const;
  void set(const std::string& key, std::string value, std::size_t line = 0);
};

Settings parse_settings(std::istream& in);
Settings read_settings(const std::string& path);

// Fully validated settings. Defaults: u = 1, backend exact, seed 0.
struct ResolvedConfig {
  AssemblySpec spec = AssemblySpec::permutations();
  std::string spec_text = "permutations";
  Rational u = 1;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  BackendChoice backend = BackendChoice::exact;
  std::string backend_text = "exact";
  std::string out;
  std::string svg;
  Settings settings;

  // Typed access to the remaining keys, with the key's line in errors.
  std::optional<std::size_t> count(const std::string& key) const;
  std::optional<double> real(const std::string& key) const;
  std::optional<Rational> rational(const std::string& key) const;
  std::optional<std::string> text(const std::string& key) const;
  std::size_t require_count(const std::string& key) const;
};

ResolvedConfig resolve(Settings settings);
ResolvedConfig load_config(const std::string& path);

}  // namespace logasm::cli
