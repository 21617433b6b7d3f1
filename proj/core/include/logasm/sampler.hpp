#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "logasm/component_vector.hpp"
#include "logasm/model.hpp"
#include "logasm/numeric.hpp"
#include "logasm/rng.hpp"

namespace logasm {

struct RejectionSample {
  ComponentVector vector;
  std::uint64_t attempts = 0;
};

// Draws independent Poisson vectors until l(xi) = n. Each attempt consumes
// n Poisson variates in index order (no early exit), so the stream position
// after a call depends only on the attempt count.
RejectionSample sample_rejection(const RateSequence& rates, std::size_t n, Rng& rng,
                                 std::uint64_t max_attempts);
RejectionSample sample_rejection(const RateSequence& rates, std::size_t n, std::uint64_t seed,
                                 std::uint64_t max_attempts);

// Exact sampler driven by the table T_j(m) proportional to P(l_j(xi) = m):
// xi_n, xi_{n-1}, ..., xi_1 are drawn in turn from
//   P(xi_j = s | remaining m) = p_j(s) T_{j-1}(m - j s) / T_j(m).
// The table holds (n+1)^2 doubles, built once and read-only afterwards.
class SequentialSampler {
 public:
  static constexpr std::size_t kMaxN = 4096;

  SequentialSampler(const RateSequence& rates, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  ComponentVector sample(Rng& rng) const;

 private:
  double table(std::size_t j, std::size_t m) const { return table_[j * (n_ + 1) + m]; }

  std::size_t n_;
  std::vector<double> rates_;
  std::vector<double> table_;
};

ComponentVector sample_sequential(const RateSequence& rates, std::size_t n, std::uint64_t seed);

// Probability that SequentialSampler returns s, as the exact product of the
// conditionals it draws from. Needs exact rates.
Rational sampler_law(const RateSequence& rates, std::size_t n, const ComponentVector& s);

// Recursive sampler with O(n) memory for large n: peels off one component at
// a time with P(size k | remaining m) = k lambda_k U_{m-k} / (m U_m), where
// U = coefficients of exp(sum lambda_j z^j) satisfy m U_m = sum_k k lambda_k
// U_{m-k}. When j lambda_j is constant the coefficients come from prefix
// sums in O(n); otherwise the build is O(n^2).
class ComponentSizeSampler {
 public:
  ComponentSizeSampler(const RateSequence& rates, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  // (size, multiplicity) pairs with increasing size.
  std::vector<std::pair<std::size_t, std::uint32_t>> sample_sparse(Rng& rng) const;
  ComponentVector sample(Rng& rng) const;

 private:
  std::size_t n_;
  std::vector<double> weights_;  // j * lambda_j, index j
  std::vector<double> coeffs_;   // U_m
};

}  // namespace logasm
