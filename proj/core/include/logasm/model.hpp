#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logasm/component_vector.hpp"
#include "logasm/numeric.hpp"

namespace logasm {

enum class Preset { permutations, ewens, set_partitions, explicit_table };

// An assembly class together with its weighted measure: m_j structures on a
// component of size j, component weights w_j, and the Poissonization scale u.
// Presets keep m_j in closed form and never materialize (j-1)! unless an
// exact value is asked for.
class AssemblySpec {
 public:
  static constexpr std::size_t kPresetLimit = 100'000'000;

  static AssemblySpec permutations(Rational u = 1);
  static AssemblySpec ewens(Rational theta, Rational u = 1);
  static AssemblySpec set_partitions(Rational u = 1);
  // m[0], w[0] describe size 1; n_max becomes the table length.
  static AssemblySpec explicit_table(std::string name, std::vector<BigInt> m,
                                     std::vector<Rational> w, Rational u = 1);

  // "permutations", "set-partitions", "ewens:<theta>". Throws ArgumentError
  // for anything else.
  static AssemblySpec from_name(std::string_view text);

  const std::string& name() const noexcept { return name_; }
  Preset preset() const noexcept { return preset_; }
  const Rational& u() const noexcept { return u_; }
  const Rational& theta() const noexcept { return theta_; }
  std::size_t n_max() const noexcept { return n_max_; }

  BigInt m(std::size_t j) const;
  Rational w(std::size_t j) const;
  // m_j / j!, exact.
  Rational structure_density(std::size_t j) const;
  // log(m_j w_j / j!) in floating point, via log-gamma for presets.
  double log_weighted_density(std::size_t j) const;

  AssemblySpec with_u(Rational u) const;
  AssemblySpec with_n_max(std::size_t n_max) const;

  // Stable textual form used for hashing and output headers.
  std::string canonical() const;

 private:
  AssemblySpec() = default;
  void check_index(std::size_t j) const;

  std::string name_;
  Preset preset_ = Preset::permutations;
  Rational theta_ = 1;
  Rational u_ = 1;
  std::size_t n_max_ = kPresetLimit;
  std::vector<BigInt> m_;
  std::vector<Rational> w_;
};

// Poisson parameters lambda_1..lambda_n. Always carries double values; carries
// exact rationals too when built from an exact derivation.
class RateSequence {
 public:
  RateSequence() = default;
  explicit RateSequence(std::vector<Rational> exact);
  explicit RateSequence(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool has_exact() const noexcept { return exact_.has_value(); }
  Backend backend() const noexcept { return has_exact() ? Backend::exact : Backend::floating; }

  double rate(std::size_t j) const { return values_.at(j - 1); }
  const Rational& exact_rate(std::size_t j) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<const Rational> exact_values() const;

  RateSequence prefix(std::size_t n) const;
  // lambda_j -> u^j lambda_j.
  RateSequence rescaled(const Rational& u) const;
  RateSequence floating() const { return RateSequence(values_); }

  // Resolves a backend preference for a problem of size n.
  Backend resolve(BackendChoice choice, std::size_t n) const;

 private:
  std::optional<std::vector<Rational>> exact_;
  std::vector<double> values_;
};

// lambda_j = u^j m_j w_j / j!. The exact backend returns rationals (and their
// double images); the floating backend evaluates in log space.
RateSequence derive_rates(const AssemblySpec& spec, std::size_t n,
                          BackendChoice backend = BackendChoice::exact);

struct WeaklyLogVerdict {
  enum class Bound { none, lower, upper };

  bool pass = true;
  std::size_t index = 0;  // smallest violating j when !pass
  Bound bound = Bound::none;
};

// theta_lo / j <= lambda_j <= theta_hi / j for all j. Exact comparison when
// the rates are exact; otherwise a relative slack of 1e-12 absorbs rounding.
WeaklyLogVerdict check_weakly_logarithmic(const RateSequence& rates, const Rational& theta_lo,
                                          const Rational& theta_hi);

// Q_n(s) * prod w_j^{s_j}: the total weight of assemblies whose component
// vector is s, where n = s.dimension() = l(s).
Rational structure_weight(const AssemblySpec& spec, const ComponentVector& s);

// W_n = sum of structure_weight over the level set, via n! [z^n] exp(...).
Rational total_count(const AssemblySpec& spec, std::size_t n);

Rational exact_law(const AssemblySpec& spec, const ComponentVector& s);
Rational exact_law(const AssemblySpec& spec, const ComponentVector& s, const Rational& total);

}  // namespace logasm
