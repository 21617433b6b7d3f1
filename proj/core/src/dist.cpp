#include "logasm/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "logasm/errors.hpp"
#include "logasm/parallel.hpp"
#include "logasm/partitions.hpp"
#include "logasm/series.hpp"

namespace logasm {

namespace {

void check_problem(const RateSequence& rates, std::size_t n, std::size_t r) {
  if (n == 0) throw ArgumentError("n must be positive");
  if (r == 0 || r > n) {
    throw ArgumentError("r = " + std::to_string(r) + " must lie in 1.." + std::to_string(n));
  }
  if (rates.size() < n) {
    throw BoundsError("need " + std::to_string(n) + " rates, have " + std::to_string(rates.size()));
  }
}

Rational factorial_q(std::uint32_t k) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

// p_m = P(l_r = m) and q_m = P(l_r(k) = m) under the conditional law for
// m = 0..n, plus P(l_r > n) which q does not charge.
struct OneDimensionalLaws {
  std::vector<long double> p;
  std::vector<long double> q;
  long double tail = 0.0L;
  Backend backend = Backend::floating;
};

OneDimensionalLaws one_dimensional_laws(const RateSequence& rates, std::size_t n, std::size_t r,
                                        BackendChoice choice) {
  check_problem(rates, n, r);
  OneDimensionalLaws laws;
  laws.backend = rates.resolve(choice, n);
  laws.p.resize(n + 1);
  laws.q.resize(n + 1);

  if (laws.backend == Backend::exact) {
    const ExactSeries head = restricted_exp_exact(rates, 0, r, n);
    const ExactSeries rest = restricted_exp_exact(rates, r, n, n);
    Rational total = 0;
    for (std::size_t m = 0; m <= n; ++m) total += head[m] * rest[n - m];
    if (sgn(total) == 0) throw DegenerateConditioningError("P(l(xi) = n) vanishes");

    Rational head_mass = 0;
    for (std::size_t j = 1; j <= r; ++j) head_mass += rates.exact_rate(j);
    const long double scale = std::exp(-static_cast<long double>(head_mass.get_d()));

    Rational captured = 0;
    for (std::size_t m = 0; m <= n; ++m) {
      captured += head[m];
      laws.p[m] = scale * static_cast<long double>(head[m].get_d());
      const Rational q = head[m] * rest[n - m] / total;
      laws.q[m] = static_cast<long double>(q.get_d());
    }
    laws.tail = std::max(0.0L, 1.0L - scale * static_cast<long double>(captured.get_d()));
    return laws;
  }

  const FloatSeries head = restricted_exp_float(rates, 0, r, n);
  const FloatSeries rest = restricted_exp_float(rates, r, n, n);
  long double total = 0.0L;
  for (std::size_t m = 0; m <= n; ++m) total += static_cast<long double>(head[m]) * rest[n - m];
  if (!(total > 0.0L)) throw DegenerateConditioningError("P(l(xi) = n) vanishes");

  long double head_mass = 0.0L;
  for (std::size_t j = 1; j <= r; ++j) head_mass += rates.rate(j);
  long double captured = 0.0L;
  for (std::size_t m = 0; m <= n; ++m) {
    const long double a = head[m];
    laws.p[m] = a > 0.0L ? std::exp(std::log(a) - head_mass) : 0.0L;
    laws.q[m] = a * static_cast<long double>(rest[n - m]) / total;
    captured += laws.p[m];
  }
  laws.tail = std::max(0.0L, 1.0L - captured);
  return laws;
}

}  // namespace

Probability conditioned_truncated_pmf(const RateSequence& rates, std::size_t n, std::size_t r,
                                      const ComponentVector& prefix, BackendChoice choice) {
  check_problem(rates, n, r);
  if (prefix.dimension() != r) {
    throw DimensionMismatchError("prefix has dimension " + std::to_string(prefix.dimension()) +
                                 ", expected r = " + std::to_string(r));
  }
  Probability result;
  result.backend = rates.resolve(choice, n);
  const std::uint64_t level = prefix.size_statistic();
  if (level > n) {
    result.value = 0.0;
    if (result.backend == Backend::exact) result.exact = Rational(0);
    return result;
  }

  if (result.backend == Backend::exact) {
    const ExactSeries rest = restricted_exp_exact(rates, r, n, n);
    const ExactSeries full = restricted_exp_exact(rates, 0, n, n);
    if (sgn(full[n]) == 0) throw DegenerateConditioningError("P(l(xi) = n) vanishes");
    Rational weight = 1;
    for (std::size_t j = 1; j <= r; ++j) {
      const std::uint32_t s = prefix.count(j);
      if (s == 0) continue;
      Rational term;
      mpz_pow_ui(term.get_num_mpz_t(), rates.exact_rate(j).get_num_mpz_t(), s);
      mpz_pow_ui(term.get_den_mpz_t(), rates.exact_rate(j).get_den_mpz_t(), s);
      term.canonicalize();
      weight *= term / factorial_q(s);
    }
    Rational value = weight * rest[n - level] / full[n];
    value.canonicalize();
    result.value = value.get_d();
    result.exact = std::move(value);
    return result;
  }

  const FloatSeries rest = restricted_exp_float(rates, r, n, n);
  const FloatSeries full = restricted_exp_float(rates, 0, n, n);
  if (!(full[n] > 0.0)) throw DegenerateConditioningError("P(l(xi) = n) vanishes");
  if (!(rest[n - level] > 0.0)) return result;
  double log_value = std::log(rest[n - level]) - std::log(full[n]);
  for (std::size_t j = 1; j <= r; ++j) {
    const double s = prefix.count(j);
    if (s == 0) continue;
    log_value += s * std::log(rates.rate(j)) - std::lgamma(s + 1.0);
  }
  result.value = std::exp(log_value);
  return result;
}

TvResult tv_truncated(const RateSequence& rates, std::size_t n, std::size_t r, BackendChoice choice) {
  const OneDimensionalLaws laws = one_dimensional_laws(rates, n, r, choice);
  long double distance = laws.tail;
  for (std::size_t m = 0; m <= n; ++m) distance += std::max(0.0L, laws.p[m] - laws.q[m]);
  return {static_cast<double>(std::min(1.0L, distance)), laws.backend};
}

TvResult tv_truncated_symmetric(const RateSequence& rates, std::size_t n, std::size_t r,
                                BackendChoice choice) {
  const OneDimensionalLaws laws = one_dimensional_laws(rates, n, r, choice);
  long double distance = 0.0L;
  for (std::size_t m = 0; m <= n; ++m) distance += std::max(0.0L, laws.q[m] - laws.p[m]);
  return {static_cast<double>(std::min(1.0L, distance)), laws.backend};
}

double tv_bruteforce(const RateSequence& rates, std::size_t n, std::size_t r, BruteForceOptions options) {
  check_problem(rates, n, r);
  if (r > kBruteForceMaxR || n > kBruteForceMaxN) {
    throw CostGuardError("tv_bruteforce is limited to r <= " + std::to_string(kBruteForceMaxR) +
                         " and n <= " + std::to_string(kBruteForceMaxN));
  }
  const std::size_t cap = options.support_cap == 0 ? n : options.support_cap;
  if (cap < n) throw ArgumentError("support_cap must be at least n to cover the conditional law");

  const auto lambdas = rates.values();
  auto poisson_pmf = [&](std::size_t j, std::uint32_t k) {
    const double lambda = lambdas[j - 1];
    return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
  };

  // Conditional law of the first r counts, marginalized from the level set.
  std::map<std::vector<std::uint32_t>, double> conditional;
  if (options.condition) {
    double normalizer = 0.0;
    std::vector<std::pair<std::vector<std::uint32_t>, double>> weighted;
    for (const ComponentVector& s : enumerate_level(n)) {
      double log_w = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const std::uint32_t k = s.count(j);
        if (k) log_w += k * std::log(lambdas[j - 1]) - std::lgamma(k + 1.0);
      }
      const double w = std::exp(log_w);
      normalizer += w;
      const auto counts = s.counts();
      weighted.emplace_back(std::vector<std::uint32_t>(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(r)), w);
    }
    for (auto& [key, w] : weighted) conditional[key] += w / normalizer;
  }

  double distance = 0.0;
  std::vector<std::uint32_t> box(r, 0);
  while (true) {
    double p = 1.0;
    for (std::size_t j = 1; j <= r; ++j) p *= poisson_pmf(j, box[j - 1]);
    double q = p;
    if (options.condition) {
      auto it = conditional.find(box);
      q = it == conditional.end() ? 0.0 : it->second;
    }
    distance += std::max(0.0, p - q);

    std::size_t pos = 0;
    while (pos < r && box[pos] == cap) box[pos++] = 0;
    if (pos == r) break;
    ++box[pos];
  }

  // The conditional law lives inside the box, so Poisson mass outside it
  // counts in full; without conditioning both laws share it.
  if (!options.condition) return std::min(1.0, distance);
  double inside = 1.0;
  for (std::size_t j = 1; j <= r; ++j) {
    double cdf = 0.0;
    for (std::uint32_t k = 0; k <= cap; ++k) cdf += poisson_pmf(j, k);
    inside *= std::min(1.0, cdf);
  }
  distance += std::max(0.0, 1.0 - inside);
  return std::min(1.0, distance);
}

double contour_exponent(double d_lo) {
  if (!(d_lo > 0.0)) throw ArgumentError("d' must be positive");
  if (d_lo <= 3.0) {
    const double root = std::sqrt(1.0 + d_lo) - 1.0;
    return root * root;
  }
  return (d_lo - 1.0) / 2.0;
}

DecayExponents fundamental_lemma_exponents(double theta_lo) {
  DecayExponents e;
  e.c = contour_exponent(theta_lo);
  e.c0 = e.c / (2.0 * (1.0 + e.c));
  e.c1 = std::min(0.5, e.c0);
  return e;
}

FlScan fl_scan(const AssemblySpec& spec, std::size_t n, std::span<const std::size_t> r_list,
               double theta_lo, BackendChoice choice) {
  if (r_list.size() < 2) throw FitError("fl_scan needs at least two values of r to fit a slope");
  for (std::size_t r : r_list) {
    if (r == 0 || 4 * r > n) {
      throw ArgumentError("fl_scan: r = " + std::to_string(r) + " outside 1..n/4 for n = " + std::to_string(n));
    }
  }
  const bool want_exact = choice == BackendChoice::exact ||
                          (choice == BackendChoice::automatic && n <= kExactLimit);
  const RateSequence rates =
      derive_rates(spec, n, want_exact ? BackendChoice::exact : BackendChoice::floating);
  const BackendChoice resolved = want_exact ? BackendChoice::exact : BackendChoice::floating;

  FlScan scan;
  scan.exponents = fundamental_lemma_exponents(theta_lo);
  scan.rows.resize(r_list.size());
  parallel_for(r_list.size(), [&](std::size_t i) {
    const TvResult tv = tv_truncated(rates, n, r_list[i], resolved);
    scan.rows[i] = FlRow{r_list[i], n, tv.distance, 0.0, tv.backend};
  });

  const double c1 = scan.exponents.c1;
  const double nd = static_cast<double>(n);
  for (const FlRow& row : scan.rows) {
    scan.c_fit = std::max(scan.c_fit, row.tv * std::pow(nd / static_cast<double>(row.r), c1));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (FlRow& row : scan.rows) {
    const double ratio = static_cast<double>(row.r) / nd;
    row.bound = scan.c_fit * std::pow(ratio, c1);
    if (row.tv <= kFitFloor) continue;
    const double x = std::log(ratio);
    const double y = std::log(row.tv);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  const double denom = static_cast<double>(k) * sxx - sx * sx;
  if (k < 2 || !(std::abs(denom) > 0.0)) {
    throw FitError("fl_scan: fewer than two distinct r with distance above the rounding floor");
  }
  scan.fitted_points = k;
  scan.slope = (static_cast<double>(k) * sxy - sx * sy) / denom;
  return scan;
}

}  // namespace logasm
