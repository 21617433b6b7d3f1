#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "logasm/component_vector.hpp"
#include "logasm/model.hpp"
#include "logasm/numeric.hpp"

namespace logasm {

struct Probability {
  double value = 0.0;
  std::optional<Rational> exact;
  Backend backend = Backend::floating;
};

// P(xi_r = s_r | l(xi) = n) = P(xi_r = s_r) P(l_{rn}(xi) = n - l_r(s_r)) / P(l(xi) = n).
// All exponential factors cancel, so with exact rates the result is an exact
// rational. With r = n this is the full conditional law of the component
// vector.
Probability conditioned_truncated_pmf(const RateSequence& rates, std::size_t n, std::size_t r,
                                      const ComponentVector& prefix,
                                      BackendChoice backend = BackendChoice::automatic);

struct TvResult {
  double distance = 0.0;
  Backend backend = Backend::floating;
};

// Total variation distance between L(k_r | l = n) and L(xi_r), computed as the
// one-sided sum over m of P(l_r = m) (1 - P(l_{rn} = n - m) / P(l = n))_+.
// Mass with l_r > n enters in closed form.
TvResult tv_truncated(const RateSequence& rates, std::size_t n, std::size_t r,
                      BackendChoice backend = BackendChoice::automatic);

// The same distance as sum_m (q_m - p_m)_+; equal to tv_truncated because both
// arguments are probability measures.
TvResult tv_truncated_symmetric(const RateSequence& rates, std::size_t n, std::size_t r,
                                BackendChoice backend = BackendChoice::automatic);

struct BruteForceOptions {
  std::size_t support_cap = 0;  // 0 means n; must be >= n
  bool condition = true;        // false compares the Poisson law with itself
};

inline constexpr std::size_t kBruteForceMaxR = 5;
inline constexpr std::size_t kBruteForceMaxN = 14;

// Enumeration oracle for tv_truncated: walks the box {0..cap}^r directly,
// takes the conditional law from a level-set enumeration (no series
// arithmetic), and adds the Poisson mass outside the box as
// 1 - prod_j P(xi_j <= cap).
double tv_bruteforce(const RateSequence& rates, std::size_t n, std::size_t r,
                     BruteForceOptions options = {});

// c(d') = (sqrt(1 + d') - 1)^2 for d' <= 3 and (d' - 1) / 2 otherwise.
double contour_exponent(double d_lo);

struct DecayExponents {
  double c = 0.0;
  double c0 = 0.0;  // c / (2 (1 + c))
  double c1 = 0.0;  // min(1/2, c0)
};

DecayExponents fundamental_lemma_exponents(double theta_lo);

struct FlRow {
  std::size_t r = 0;
  std::size_t n = 0;
  double tv = 0.0;
  double bound = 0.0;  // c_fit * (r / n)^c1
  Backend backend = Backend::floating;
};

struct FlScan {
  std::vector<FlRow> rows;
  DecayExponents exponents;
  double slope = 0.0;  // least squares of log tv on log(r / n)
  double c_fit = 0.0;  // max_r tv * (n / r)^c1
  std::size_t fitted_points = 0;
};

// Distances below this are at the rounding floor and are left out of the
// slope fit (they still enter c_fit).
inline constexpr double kFitFloor = 1e-13;

FlScan fl_scan(const AssemblySpec& spec, std::size_t n, std::span<const std::size_t> r_list,
               double theta_lo, BackendChoice backend = BackendChoice::automatic);

}  // namespace logasm
