#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logasm/model.hpp"
#include "logasm/numeric.hpp"

namespace logasm {

// Truncated power series c_0 + c_1 z + ... + c_N z^N.
template <class T>
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t degree) : coeffs_(degree + 1, T(0)) {}
  explicit PowerSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.emplace_back(0);
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  T& operator[](std::size_t k) { return coeffs_[k]; }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  bool operator==(const PowerSeries&) const = default;

 private:
  std::vector<T> coeffs_;
};

using ExactSeries = PowerSeries<Rational>;
using FloatSeries = PowerSeries<double>;

// exp(g) up to `degree` via n D_n = sum_{j<=n} j g_j D_{n-j}. Requires
// g_0 = 0; coefficients of g beyond its own degree are treated as zero.
template <class T>
PowerSeries<T> exp_series(const PowerSeries<T>& g, std::size_t degree);

// Cauchy product truncated at `degree`.
template <class T>
PowerSeries<T> multiply(const PowerSeries<T>& a, const PowerSeries<T>& b, std::size_t degree);

// Coefficients of exp(sum_{lo<j<=hi} lambda_j z^j) up to `degree`.
ExactSeries restricted_exp_exact(const RateSequence& rates, std::size_t lo, std::size_t hi,
                                 std::size_t degree);
FloatSeries restricted_exp_float(const RateSequence& rates, std::size_t lo, std::size_t hi,
                                 std::size_t degree);

// Law of l_{ab}(xi) = sum_{a<j<=b} j xi_j for independent Poisson xi_j.
// probabilities[m] = exp(log_prefactor) * coefficient[m]; the coefficients
// are kept unnormalized so tiny probabilities survive in log space.
struct EllPmf {
  std::vector<double> probabilities;
  std::vector<double> log_probabilities;
  double log_prefactor = 0.0;  // -sum_{a<j<=b} lambda_j
  Backend backend = Backend::floating;
};

EllPmf ell_pmf(const RateSequence& rates, std::size_t a, std::size_t b, std::size_t m_max,
               BackendChoice backend = BackendChoice::automatic);

// n D_n / D(1) for D(z) = exp(sum_{j<=n} lambda_j z^j), one ratio per entry
// of n_list. Bounded above and below for weakly logarithmic rates.
std::vector<double> lemma2_band(const RateSequence& rates, std::span<const std::size_t> n_list);

}  // namespace logasm
