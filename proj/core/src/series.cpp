#include "logasm/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logasm/errors.hpp"

namespace logasm {

namespace {

bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_zero(double x) { return x == 0.0; }

}  // namespace

template <class T>
PowerSeries<T> exp_series(const PowerSeries<T>& g, std::size_t degree) {
  if (!is_zero(g[0])) {
    throw ArgumentError("exp_series needs a series with zero constant term");
  }
  const std::size_t top = std::min(degree, g.degree());
  // weighted[j] = j * g_j, only the nonzero terms are visited.
  std::vector<std::size_t> support;
  std::vector<T> weighted(top + 1, T(0));
  for (std::size_t j = 1; j <= top; ++j) {
    if (is_zero(g[j])) continue;
    weighted[j] = g[j] * T(static_cast<long>(j));
    support.push_back(j);
  }

  PowerSeries<T> d(degree);
  d[0] = T(1);
  T acc;
  for (std::size_t n = 1; n <= degree; ++n) {
    acc = T(0);
    for (std::size_t j : support) {
      if (j > n) break;
      acc += weighted[j] * d[n - j];
    }
    d[n] = acc / T(static_cast<long>(n));
  }
  return d;
}

template <class T>
PowerSeries<T> multiply(const PowerSeries<T>& a, const PowerSeries<T>& b, std::size_t degree) {
  PowerSeries<T> out(degree);
  for (std::size_t i = 0; i <= std::min(degree, a.degree()); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j <= std::min(degree - i, b.degree()); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

template PowerSeries<Rational> exp_series(const PowerSeries<Rational>&, std::size_t);
template PowerSeries<double> exp_series(const PowerSeries<double>&, std::size_t);
template PowerSeries<Rational> multiply(const PowerSeries<Rational>&, const PowerSeries<Rational>&,
                                        std::size_t);
template PowerSeries<double> multiply(const PowerSeries<double>&, const PowerSeries<double>&,
                                      std::size_t);

namespace {

void check_range(const RateSequence& rates, std::size_t lo, std::size_t hi) {
  if (lo > hi) throw ArgumentError("index range (a, b] needs a <= b");
  if (hi > rates.size()) {
    throw BoundsError("index range (" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] exceeds the " + std::to_string(rates.size()) + " available rates");
  }
}

}  // namespace

ExactSeries restricted_exp_exact(const RateSequence& rates, std::size_t lo, std::size_t hi,
                                 std::size_t degree) {
  check_range(rates, lo, hi);
  ExactSeries g(degree);
  for (std::size_t j = lo + 1; j <= std::min(hi, degree); ++j) g[j] = rates.exact_rate(j);
  return exp_series(g, degree);
}

FloatSeries restricted_exp_float(const RateSequence& rates, std::size_t lo, std::size_t hi,
                                 std::size_t degree) {
  check_range(rates, lo, hi);
  FloatSeries g(degree);
  for (std::size_t j = lo + 1; j <= std::min(hi, degree); ++j) g[j] = rates.rate(j);
  return exp_series(g, degree);
}

EllPmf ell_pmf(const RateSequence& rates, std::size_t a, std::size_t b, std::size_t m_max,
               BackendChoice backend) {
  check_range(rates, a, b);
  EllPmf result;
  result.backend = rates.resolve(backend, std::max(b, m_max));
  result.probabilities.resize(m_max + 1);
  result.log_probabilities.resize(m_max + 1);

  if (result.backend == Backend::exact) {
    Rational mass = 0;
    for (std::size_t j = a + 1; j <= b; ++j) mass += rates.exact_rate(j);
    result.log_prefactor = -mass.get_d();
    const ExactSeries coeffs = restricted_exp_exact(rates, a, b, m_max);
    for (std::size_t m = 0; m <= m_max; ++m) result.log_probabilities[m] = log_of(coeffs[m]);
  } else {
    double mass = 0.0;
    for (std::size_t j = a + 1; j <= b; ++j) mass += rates.rate(j);
    result.log_prefactor = -mass;
    const FloatSeries coeffs = restricted_exp_float(rates, a, b, m_max);
    for (std::size_t m = 0; m <= m_max; ++m) {
      result.log_probabilities[m] =
          coeffs[m] > 0.0 ? std::log(coeffs[m]) : -std::numeric_limits<double>::infinity();
    }
  }
  for (std::size_t m = 0; m <= m_max; ++m) {
    result.log_probabilities[m] += result.log_prefactor;
    result.probabilities[m] = std::exp(result.log_probabilities[m]);
  }
  return result;
}

std::vector<double> lemma2_band(const RateSequence& rates, std::span<const std::size_t> n_list) {
  std::vector<double> ratios;
  if (n_list.empty()) return ratios;
  const std::size_t top = *std::max_element(n_list.begin(), n_list.end());
  if (top > rates.size()) throw BoundsError("lemma2_band: n exceeds the available rates");

  // [z^n] exp(sum_{j<=N} lambda_j z^j) does not depend on N >= n, so one
  // series serves every entry.
  const FloatSeries d = restricted_exp_float(rates, 0, top, top);
  std::vector<double> cumulative(top + 1, 0.0);
  for (std::size_t j = 1; j <= top; ++j) cumulative[j] = cumulative[j - 1] + rates.rate(j);

  ratios.reserve(n_list.size());
  for (std::size_t n : n_list) {
    if (n == 0) throw ArgumentError("lemma2_band: n must be positive");
    ratios.push_back(std::exp(std::log(static_cast<double>(n)) + std::log(d[n]) - cumulative[n]));
  }
  return ratios;
}

}  // namespace logasm
