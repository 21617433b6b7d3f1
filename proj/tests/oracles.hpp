#pragma once

// Independent reference computations for the tests. None of these call the
// series engine, the samplers, or the taut-string solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "logasm/component_vector.hpp"
#include "logasm/numeric.hpp"

namespace oracle {

using logasm::BigInt;
using logasm::ComponentVector;
using logasm::Rational;

inline BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return f;
}

// Bell numbers through the Bell triangle.
inline std::vector<BigInt> bell_numbers(std::size_t n_max) {
  std::vector<BigInt> bell{1};
  std::vector<BigInt> row{1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<BigInt> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = next;
    bell.push_back(row.front());
  }
  return bell;
}

// Partition numbers p(0..n) by the coin-change recurrence.
inline std::vector<std::size_t> partition_counts(std::size_t n_max) {
  std::vector<std::size_t> p(n_max + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= n_max; ++part) {
    for (std::size_t m = part; m <= n_max; ++m) p[m] += p[m - part];
  }
  return p;
}

// P(xi = s | l(xi) = n) for independent Poisson(lambda_j): the Poisson
// weights prod lambda^s / s! normalized over the supplied level set (the
// e^{-lambda} factors cancel).
inline Rational poisson_weight(const std::vector<Rational>& rates, const ComponentVector& s) {
  Rational w = 1;
  for (std::size_t j = 1; j <= s.dimension(); ++j) {
    for (std::uint32_t k = 1; k <= s.count(j); ++k) {
      w = w * rates[j - 1] / static_cast<unsigned long>(k);
    }
  }
  return w;
}

// Coefficients of exp(p) for a polynomial p with p(0) = 0, by summing
// p^k / k! (no recurrence).
inline std::vector<double> exp_by_powers(const std::vector<double>& p, std::size_t degree) {
  std::vector<double> out(degree + 1, 0.0);
  std::vector<double> power(degree + 1, 0.0);
  power[0] = 1.0;
  double inv_fact = 1.0;
  for (std::size_t k = 0; k <= degree; ++k) {
    if (k > 0) {
      std::vector<double> next(degree + 1, 0.0);
      for (std::size_t a = 0; a <= degree; ++a) {
        if (power[a] == 0.0) continue;
        for (std::size_t b = 1; b < p.size() && a + b <= degree; ++b) next[a + b] += power[a] * p[b];
      }
      power = std::move(next);
      inv_fact /= static_cast<double>(k);
    }
    for (std::size_t i = 0; i <= degree; ++i) out[i] += power[i] * inv_fact;
  }
  return out;
}

// Minimal energy sum (g_i - g_{i-1})^2 / h_i subject to lo_i <= g_i <= hi_i,
// g_0 = 0, free right end, by projected successive over-relaxation on the
// box-constrained quadratic program.
inline double qp_min_energy(const std::vector<double>& t, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
  const std::size_t k = t.size();
  std::vector<double> g(k, 0.0);
  for (std::size_t i = 1; i < k; ++i) g[i] = std::clamp(0.0, lo[i], hi[i]);
  const double omega = 1.9;
  for (int sweep = 0; sweep < 2'000'000; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
      const double wl = 1.0 / (t[i] - t[i - 1]);
      double num = wl * g[i - 1];
      double den = wl;
      if (i + 1 < k) {
        const double wr = 1.0 / (t[i + 1] - t[i]);
        num += wr * g[i + 1];
        den += wr;
      }
      const double target = g[i] + omega * (num / den - g[i]);
      const double next = std::clamp(target, lo[i], hi[i]);
      change = std::max(change, std::abs(next - g[i]));
      g[i] = next;
    }
    if (change < 1e-14) break;
  }
  double energy = 0.0;
  for (std::size_t i = 1; i < k; ++i) {
    const double dy = g[i] - g[i - 1];
    energy += dy * dy / (t[i] - t[i - 1]);
  }
  return energy;
}

// Two-sample chi-square homogeneity test over categories; categories with
// no observations in either sample are dropped. Returns the p-value.
template <class Key>
double two_sample_chi_square(const std::map<Key, std::size_t>& a, const std::map<Key, std::size_t>& b) {
  std::map<Key, std::pair<double, double>> cells;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [key, count] : a) cells[key].first += static_cast<double>(count), na += count;
  for (const auto& [key, count] : b) cells[key].second += static_cast<double>(count), nb += count;
  double stat = 0.0;
  std::size_t df = 0;
  for (const auto& [key, c] : cells) {
    const double total = c.first + c.second;
    if (total == 0.0) continue;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    stat += (c.first - ea) * (c.first - ea) / ea + (c.second - eb) * (c.second - eb) / eb;
    ++df;
  }
  if (df < 2) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(df - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace oracle
