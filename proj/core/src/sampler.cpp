#include "logasm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "logasm/errors.hpp"
#include "logasm/series.hpp"

namespace logasm {

namespace {

void check_rates(const RateSequence& rates, std::size_t n) {
  if (n == 0) throw ArgumentError("n must be positive");
  if (rates.size() < n) {
    throw BoundsError("need " + std::to_string(n) + " rates, have " + std::to_string(rates.size()));
  }
}

}  // namespace

RejectionSample sample_rejection(const RateSequence& rates, std::size_t n, Rng& rng,
                                 std::uint64_t max_attempts) {
  check_rates(rates, n);
  if (max_attempts == 0) throw ArgumentError("max_attempts must be at least 1");
  std::vector<std::uint32_t> counts(n);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::uint64_t level = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::uint64_t k = poisson(rng, rates.rate(j));
      counts[j - 1] = static_cast<std::uint32_t>(k);
      level += k * j;
    }
    if (level == n) return {ComponentVector(counts), attempt};
  }
  throw RetryBudgetError(max_attempts);
}

RejectionSample sample_rejection(const RateSequence& rates, std::size_t n, std::uint64_t seed,
                                 std::uint64_t max_attempts) {
  Rng rng(seed);
  return sample_rejection(rates, n, rng, max_attempts);
}

SequentialSampler::SequentialSampler(const RateSequence& rates, std::size_t n) : n_(n) {
  check_rates(rates, n);
  if (n > kMaxN) {
    throw CostGuardError("SequentialSampler table limited to n <= " + std::to_string(kMaxN) +
                         "; use ComponentSizeSampler");
  }
  rates_.assign(rates.values().begin(), rates.values().begin() + static_cast<std::ptrdiff_t>(n));
  table_.assign((n + 1) * (n + 1), 0.0);
  table_[0] = 1.0;  // T_0 = point mass at 0
  for (std::size_t j = 1; j <= n; ++j) {
    const double lambda = rates_[j - 1];
    double* row = &table_[j * (n + 1)];
    const double* prev = &table_[(j - 1) * (n + 1)];
    for (std::size_t m = 0; m <= n; ++m) {
      double term = 1.0;  // lambda^s / s!
      double acc = 0.0;
      for (std::size_t s = 0; s * j <= m; ++s) {
        if (s) term *= lambda / static_cast<double>(s);
        acc += term * prev[m - s * j];
      }
      row[m] = acc;
    }
  }
}

ComponentVector SequentialSampler::sample(Rng& rng) const {
  ComponentVector out(n_);
  std::size_t remaining = n_;
  for (std::size_t j = n_; j >= 1 && remaining > 0; --j) {
    const double lambda = rates_[j - 1];
    const double target = rng.uniform() * table(j, remaining);
    double term = 1.0;
    double acc = 0.0;
    std::size_t chosen = 0;
    std::size_t last_positive = 0;
    bool found = false;
    for (std::size_t s = 0; s * j <= remaining; ++s) {
      if (s) term *= lambda / static_cast<double>(s);
      const double w = term * table(j - 1, remaining - s * j);
      if (w > 0.0) last_positive = s;
      acc += w;
      if (target < acc) {
        chosen = s;
        found = true;
        break;
      }
    }
    if (!found) chosen = last_positive;  // rounding left target at the top edge
    out.set(j, static_cast<std::uint32_t>(chosen));
    remaining -= chosen * j;
  }
  return out;
}

ComponentVector sample_sequential(const RateSequence& rates, std::size_t n, std::uint64_t seed) {
  SequentialSampler sampler(rates, n);
  Rng rng(seed);
  return sampler.sample(rng);
}

Rational sampler_law(const RateSequence& rates, std::size_t n, const ComponentVector& s) {
  check_rates(rates, n);
  if (s.dimension() != n) throw DimensionMismatchError("component vector dimension differs from n");
  const std::uint64_t level = s.size_statistic();
  if (level != n) throw LevelMismatchError(level, n);

  // Exact T_j(m) for j = 0..n, m = 0..n.
  std::vector<std::vector<Rational>> table(n + 1, std::vector<Rational>(n + 1, 0));
  table[0][0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    const Rational& lambda = rates.exact_rate(j);
    for (std::size_t m = 0; m <= n; ++m) {
      Rational term = 1;
      Rational acc = 0;
      for (std::size_t s_j = 0; s_j * j <= m; ++s_j) {
        if (s_j) term = term * lambda / static_cast<unsigned long>(s_j);
        acc += term * table[j - 1][m - s_j * j];
      }
      table[j][m] = acc;
    }
  }

  Rational law = 1;
  std::size_t remaining = n;
  for (std::size_t j = n; j >= 1; --j) {
    const std::uint32_t count = s.count(j);
    Rational term = 1;
    for (std::uint32_t k = 1; k <= count; ++k) term = term * rates.exact_rate(j) / k;
    law *= term * table[j - 1][remaining - count * j] / table[j][remaining];
    remaining -= count * j;
  }
  law.canonicalize();
  return law;
}

ComponentSizeSampler::ComponentSizeSampler(const RateSequence& rates, std::size_t n) : n_(n) {
  check_rates(rates, n);
  weights_.assign(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) weights_[j] = static_cast<double>(j) * rates.rate(j);

  const double d = weights_[1];
  const bool constant = std::all_of(weights_.begin() + 1, weights_.end(),
                                    [d](double w) { return std::abs(w - d) <= 1e-12 * d; });
  coeffs_.assign(n + 1, 0.0);
  coeffs_[0] = 1.0;
  if (constant) {
    double prefix = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
      coeffs_[m] = d * prefix / static_cast<double>(m);
      prefix += coeffs_[m];
    }
  } else {
    const FloatSeries series = restricted_exp_float(rates, 0, n, n);
    for (std::size_t m = 0; m <= n; ++m) coeffs_[m] = series[m];
  }
}

std::vector<std::pair<std::size_t, std::uint32_t>> ComponentSizeSampler::sample_sparse(Rng& rng) const {
  std::map<std::size_t, std::uint32_t> sizes;
  std::size_t remaining = n_;
  while (remaining > 0) {
    const double target = rng.uniform() * static_cast<double>(remaining) * coeffs_[remaining];
    double acc = 0.0;
    std::size_t chosen = 0;
    for (std::size_t k = 1; k <= remaining; ++k) {
      const double w = weights_[k] * coeffs_[remaining - k];
      if (w > 0.0) chosen = k;
      acc += w;
      if (target < acc) break;
    }
    ++sizes[chosen];
    remaining -= chosen;
  }
  return {sizes.begin(), sizes.end()};
}

ComponentVector ComponentSizeSampler::sample(Rng& rng) const {
  ComponentVector out(n_);
  for (auto [size, count] : sample_sparse(rng)) out.set(size, count);
  return out;
}

}  // namespace logasm
