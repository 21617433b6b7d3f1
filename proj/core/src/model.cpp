#include "logasm/model.hpp"

#include <cmath>
#include <sstream>

#include "logasm/errors.hpp"
#include "logasm/series.hpp"

namespace logasm {

namespace {

void require_positive(const Rational& value, const char* what) {
  if (sgn(value) <= 0) throw ArgumentError(std::string(what) + " must be positive");
}

BigInt factorial(std::size_t n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rational power(const Rational& base, std::size_t exponent) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

AssemblySpec AssemblySpec::permutations(Rational u) {
  require_positive(u, "u");
  AssemblySpec spec;
  spec.name_ = "permutations";
  spec.preset_ = Preset::permutations;
  spec.u_ = std::move(u);
  return spec;
}

AssemblySpec AssemblySpec::ewens(Rational theta, Rational u) {
  require_positive(theta, "theta");
  require_positive(u, "u");
  AssemblySpec spec;
  spec.name_ = "ewens:" + rational_text(theta);
  spec.preset_ = Preset::ewens;
  spec.theta_ = std::move(theta);
  spec.u_ = std::move(u);
  return spec;
}

AssemblySpec AssemblySpec::set_partitions(Rational u) {
  require_positive(u, "u");
  AssemblySpec spec;
  spec.name_ = "set-partitions";
  spec.preset_ = Preset::set_partitions;
  spec.u_ = std::move(u);
  return spec;
}

AssemblySpec AssemblySpec::explicit_table(std::string name, std::vector<BigInt> m,
                                          std::vector<Rational> w, Rational u) {
  require_positive(u, "u");
  if (m.empty()) throw ArgumentError("explicit spec needs at least one m_j");
  if (m.size() != w.size()) {
    throw ArgumentError("explicit spec: m and w tables differ in length (" +
                        std::to_string(m.size()) + " vs " + std::to_string(w.size()) + ")");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (sgn(m[i]) <= 0) throw ArgumentError("m_" + std::to_string(i + 1) + " must be >= 1");
    if (sgn(w[i]) <= 0) throw ArgumentError("w_" + std::to_string(i + 1) + " must be positive");
  }
  AssemblySpec spec;
  spec.name_ = name.empty() ? "explicit" : std::move(name);
  spec.preset_ = Preset::explicit_table;
  spec.n_max_ = m.size();
  spec.m_ = std::move(m);
  spec.w_ = std::move(w);
  spec.u_ = std::move(u);
  return spec;
}

AssemblySpec AssemblySpec::from_name(std::string_view text) {
  if (text == "permutations") return permutations();
  if (text == "set-partitions") return set_partitions();
  if (text.starts_with("ewens:")) return ewens(parse_rational(text.substr(6)));
  throw ArgumentError("unknown assembly preset '" + std::string(text) + "'");
}

void AssemblySpec::check_index(std::size_t j) const {
  if (j == 0 || j > n_max_) {
    throw BoundsError("component size " + std::to_string(j) + " outside 1.." +
                      std::to_string(n_max_) + " for spec " + name_);
  }
}

BigInt AssemblySpec::m(std::size_t j) const {
  check_index(j);
  switch (preset_) {
    case Preset::permutations:
    case Preset::ewens:
      return factorial(j - 1);
    case Preset::set_partitions:
      return 1;
    case Preset::explicit_table:
      return m_[j - 1];
  }
  return 1;
}

Rational AssemblySpec::w(std::size_t j) const {
  check_index(j);
  switch (preset_) {
    case Preset::ewens:
      return theta_;
    case Preset::explicit_table:
      return w_[j - 1];
    default:
      return 1;
  }
}

Rational AssemblySpec::structure_density(std::size_t j) const {
  check_index(j);
  switch (preset_) {
    case Preset::permutations:
    case Preset::ewens:
      return Rational(1, static_cast<unsigned long>(j));
    case Preset::set_partitions:
      return Rational(BigInt(1), factorial(j));
    case Preset::explicit_table: {
      Rational q(m_[j - 1], factorial(j));
      q.canonicalize();
      return q;
    }
  }
  return 1;
}

double AssemblySpec::log_weighted_density(std::size_t j) const {
  check_index(j);
  const double jd = static_cast<double>(j);
  switch (preset_) {
    case Preset::permutations:
      return -std::log(jd);
    case Preset::ewens:
      return log_of(theta_) - std::log(jd);
    case Preset::set_partitions:
      return -std::lgamma(jd + 1.0);
    case Preset::explicit_table:
      return log_of(m_[j - 1]) + log_of(w_[j - 1]) - std::lgamma(jd + 1.0);
  }
  return 0.0;
}

AssemblySpec AssemblySpec::with_u(Rational u) const {
  require_positive(u, "u");
  AssemblySpec copy = *this;
  copy.u_ = std::move(u);
  return copy;
}

AssemblySpec AssemblySpec::with_n_max(std::size_t n_max) const {
  if (n_max == 0) throw ArgumentError("n_max must be positive");
  if (preset_ == Preset::explicit_table && n_max > m_.size()) {
    throw ArgumentError("n_max exceeds the explicit table length");
  }
  AssemblySpec copy = *this;
  copy.n_max_ = n_max;
  return copy;
}

std::string AssemblySpec::canonical() const {
  std::ostringstream out;
  out << "name=" << name_ << ";u=" << u_.get_str() << ";n_max=" << n_max_;
  if (preset_ == Preset::explicit_table) {
    out << ";m=";
    for (std::size_t i = 0; i < m_.size(); ++i) out << (i ? "," : "") << m_[i].get_str();
    out << ";w=";
    for (std::size_t i = 0; i < w_.size(); ++i) out << (i ? "," : "") << w_[i].get_str();
  }
  return out.str();
}

// --- RateSequence ---------------------------------------------------------

RateSequence::RateSequence(std::vector<Rational> exact) {
  values_.reserve(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (sgn(exact[i]) <= 0) throw ArgumentError("rate lambda_" + std::to_string(i + 1) + " must be positive");
    values_.push_back(exact[i].get_d());
  }
  exact_ = std::move(exact);
}

RateSequence::RateSequence(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw ArgumentError("rate lambda_" + std::to_string(i + 1) + " must be positive and finite");
    }
  }
}

const Rational& RateSequence::exact_rate(std::size_t j) const {
  if (!exact_) throw ArgumentError("rate sequence has no exact representation");
  return exact_->at(j - 1);
}

std::span<const Rational> RateSequence::exact_values() const {
  if (!exact_) throw ArgumentError("rate sequence has no exact representation");
  return *exact_;
}

RateSequence RateSequence::prefix(std::size_t n) const {
  if (n > size()) throw BoundsError("prefix longer than the rate sequence");
  if (exact_) return RateSequence(std::vector<Rational>(exact_->begin(), exact_->begin() + static_cast<std::ptrdiff_t>(n)));
  return RateSequence(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

RateSequence RateSequence::rescaled(const Rational& u) const {
  require_positive(u, "u");
  if (exact_) {
    std::vector<Rational> scaled(exact_->size());
    Rational factor = 1;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      factor *= u;
      scaled[i] = (*exact_)[i] * factor;
    }
    return RateSequence(std::move(scaled));
  }
  const double log_u = log_of(u);
  std::vector<double> scaled(values_.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    scaled[i] = values_[i] * std::exp(static_cast<double>(i + 1) * log_u);
  }
  return RateSequence(std::move(scaled));
}

Backend RateSequence::resolve(BackendChoice choice, std::size_t n) const {
  switch (choice) {
    case BackendChoice::exact:
      if (!has_exact()) throw ArgumentError("exact backend requested but rates are floating-point only");
      return Backend::exact;
    case BackendChoice::floating:
      return Backend::floating;
    case BackendChoice::automatic:
      return has_exact() && n <= kExactLimit ? Backend::exact : Backend::floating;
  }
  return Backend::floating;
}

// --- operations -----------------------------------------------------------

RateSequence derive_rates(const AssemblySpec& spec, std::size_t n, BackendChoice backend) {
  if (n == 0) throw ArgumentError("n must be positive");
  if (n > spec.n_max()) {
    throw BoundsError("n = " + std::to_string(n) + " exceeds n_max = " + std::to_string(spec.n_max()) +
                      " of spec " + spec.name());
  }
  if (backend != BackendChoice::floating) {
    std::vector<Rational> rates(n);
    Rational u_power = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      u_power *= spec.u();
      rates[j - 1] = u_power * spec.structure_density(j) * spec.w(j);
    }
    return RateSequence(std::move(rates));
  }
  std::vector<double> rates(n);
  const double log_u = log_of(spec.u());
  for (std::size_t j = 1; j <= n; ++j) {
    rates[j - 1] = std::exp(static_cast<double>(j) * log_u + spec.log_weighted_density(j));
  }
  return RateSequence(std::move(rates));
}

WeaklyLogVerdict check_weakly_logarithmic(const RateSequence& rates, const Rational& theta_lo,
                                          const Rational& theta_hi) {
  if (sgn(theta_lo) <= 0 || sgn(theta_hi) <= 0) throw ArgumentError("theta bounds must be positive");
  if (theta_lo > theta_hi) throw ArgumentError("theta' must not exceed theta''");

  WeaklyLogVerdict verdict;
  auto fail = [&](std::size_t j, WeaklyLogVerdict::Bound bound) {
    verdict.pass = false;
    verdict.index = j;
    verdict.bound = bound;
    return verdict;
  };

  if (rates.has_exact()) {
    for (std::size_t j = 1; j <= rates.size(); ++j) {
      const Rational scaled = rates.exact_rate(j) * static_cast<unsigned long>(j);
      if (scaled < theta_lo) return fail(j, WeaklyLogVerdict::Bound::lower);
      if (scaled > theta_hi) return fail(j, WeaklyLogVerdict::Bound::upper);
    }
    return verdict;
  }

  constexpr double kSlack = 1e-12;
  const double lo = theta_lo.get_d();
  const double hi = theta_hi.get_d();
  for (std::size_t j = 1; j <= rates.size(); ++j) {
    const double scaled = rates.rate(j) * static_cast<double>(j);
    if (scaled < lo * (1.0 - kSlack)) return fail(j, WeaklyLogVerdict::Bound::lower);
    if (scaled > hi * (1.0 + kSlack)) return fail(j, WeaklyLogVerdict::Bound::upper);
  }
  return verdict;
}

Rational structure_weight(const AssemblySpec& spec, const ComponentVector& s) {
  const std::size_t n = s.dimension();
  if (n > spec.n_max()) throw BoundsError("component vector longer than n_max");
  const std::uint64_t level = s.size_statistic();
  if (level != n) throw LevelMismatchError(level, n);

  Rational weight(factorial(n));
  for (std::size_t j = 1; j <= n; ++j) {
    const std::uint32_t count = s.count(j);
    if (count == 0) continue;
    weight *= power(spec.structure_density(j) * spec.w(j), count);
    weight /= factorial(count);
  }
  weight.canonicalize();
  return weight;
}

Rational total_count(const AssemblySpec& spec, std::size_t n) {
  if (n > spec.n_max()) throw BoundsError("n exceeds n_max of spec " + spec.name());
  if (n == 0) return 1;
  ExactSeries g(n);
  for (std::size_t j = 1; j <= n; ++j) g[j] = spec.structure_density(j) * spec.w(j);
  const ExactSeries d = exp_series(g, n);
  Rational total = d[n] * Rational(factorial(n));
  total.canonicalize();
  return total;
}

Rational exact_law(const AssemblySpec& spec, const ComponentVector& s, const Rational& total) {
  Rational law = structure_weight(spec, s) / total;
  law.canonicalize();
  return law;
}

Rational exact_law(const AssemblySpec& spec, const ComponentVector& s) {
  return exact_law(spec, s, total_count(spec, s.dimension()));
}

}  // namespace logasm
