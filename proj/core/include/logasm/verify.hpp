#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "logasm/additive.hpp"
#include "logasm/component_vector.hpp"
#include "logasm/model.hpp"
#include "logasm/numeric.hpp"

namespace logasm {

// V(U) = {t1 + t2 - t3 : t_i in U, t1 . (t2 - t3) = 0, t3 || t2}, where
// t3 || t2 means t3 <= t2 and t3 . (t2 - t3) = 0. Sorted, without
// duplicates. O(|U|^3).
std::vector<ComponentVector> extension_set(std::span<const ComponentVector> U);

// Membership of s in V(U) without materializing V(U). Writing d = t2 - t3,
// s = t1 + d with disjoint supports, so d = s restricted to some support set
// S and t1 = s off S. `U` must be sorted.
bool in_extension(std::span<const ComponentVector> U, const ComponentVector& s);

using VectorPredicate = std::function<bool(const ComponentVector&)>;

// Membership for a predicate-defined U, searching t3 only in the box
// {0..cap}^n. A true answer is always correct; a false answer is exact
// relative to U restricted to the box.
bool in_extension(const VectorPredicate& in_u, const ComponentVector& s, std::uint32_t cap);

// rows[j-1][k] = p_j(k). Entries past a row's end read as 0.
struct PmfTable {
  std::vector<std::vector<double>> rows;
  std::size_t size() const noexcept { return rows.size(); }
  double p(std::size_t j, std::size_t k) const {
    const auto& row = rows.at(j - 1);
    return k < row.size() ? row[k] : 0.0;
  }
};

// Poisson(lambda_j) pmfs for j = 1..n, each row covering k = 0..max(n/j, k_max).
PmfTable poisson_pmf_table(const RateSequence& rates, std::size_t n, std::size_t k_max = 0);

// Constants for the four hypotheses of the extension-set inequality, for
// the product measure P = prod p_j on Z_+^n:
//   (i)   p_j(0) >= c2
//   (ii)  P(Z(m)) <= C1 (n/(m+1))^{1-theta} P_n,  0 <= m < n
//   (iii) P_n >= c3 / n
//   (iv)  sum_{kj=m, k>=1} p_j(k)/p_j(0) <= C2 / m,  1 <= m <= n
// with Z(m) = {l(s) = m}, P_n = P(Z(n)). Each is the smallest admissible
// value, so each inequality is tight at the recorded index.
struct Lemma8Constants {
  double theta = 1.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C = 0.0;  // max{32/c2^2, C2/c3 + 4 C1/c2 + C1 C2/theta}
  double Pn = 0.0;
  std::size_t c2_index = 0;
  std::size_t C1_index = 0;
  std::size_t C2_index = 0;
  std::vector<double> level_mass;  // P(Z(m)), m = 0..n
};

Lemma8Constants lemma8_constants(const PmfTable& p, std::size_t n, double theta);

inline constexpr std::size_t kRuzsaMaxN = 12;

struct RuzsaReport {
  double lhs = 0.0;               // mu_n(complement of V)
  double complement_lower = 0.0;  // bracket on P(complement of U)
  double complement_upper = 0.0;
  double theta = 1.0;             // min(1, theta')
  double theta_prime = 1.0;
  double rhs = 0.0;               // C P^theta + C1 C2 / theta n^{-theta} 1{theta < 1}
  double rhs_theta_prime = 0.0;   // same with n^{-theta'} in the last term
  Lemma8Constants constants;
  std::size_t level_in_v = 0;     // level-n vectors found in V(U)
  bool pass = false;
};

// Poisson rates lambda_1..lambda_n; theta' is the lower weakly-log constant.
RuzsaReport ruzsa_check(const RateSequence& rates, std::size_t n,
                        std::span<const ComponentVector> U, double theta_prime);
// U = {t : in_u(t)}: P(U) is summed over the box {0..cap}^n and the Poisson
// mass outside the box widens the complement bracket.
RuzsaReport ruzsa_check(const RateSequence& rates, std::size_t n, const VectorPredicate& in_u,
                        std::uint32_t cap, double theta_prime);

struct RuzsaInstance {
  std::string family;  // preset name or "random"
  std::size_t n = 0;
  std::vector<ComponentVector> U;
  RuzsaReport report;
};

// Randomized instances over weakly logarithmic rate families (permutations,
// Ewens with theta in {1/2, 3/2, 2}, random rates theta_j / j with theta_j in
// [1/2, 2]), n in 1..n_max, and random U mixing level-set vectors with
// vectors from the box {0..2}^n. theta' = min_j j lambda_j.
std::vector<RuzsaInstance> ruzsa_random_suite(std::size_t instances, std::uint64_t seed,
                                              std::size_t n_max = 8);

struct RuzsaIntervalReport {
  RuzsaReport extension;  // U = {t : |H(t) - a| < u/3}
  double lhs = 0.0;       // mu_n(|h(sigma) - a| >= u)
  bool pass = false;      // both lhs values below the upper right-hand side
};

// Additive-function form: with U as above, V(U) sits inside
// {|H - a| < u}, so mu_n(|h - a| >= u) is bounded by the same right-hand
// side evaluated at P(|sum h_j(xi_j) - a| >= u/3).
RuzsaIntervalReport ruzsa_interval_check(const RateSequence& rates, std::size_t n,
                                         const AdditiveFunction& h, double a, double u,
                                         std::uint32_t cap, double theta_prime);

struct Prop1Report {
  double ratio_minus_one = 0.0;  // F_m / (e_r D_n) - 1
  double bound = 0.0;            // (eta + (r/n) 1{r >= 1}) / delta + delta^c
  double c = 0.0;
  double e_r = 1.0;
  Backend backend = Backend::exact;
};

// D(z) = exp(sum_{j<=n} d_j z^j / j); F drops the terms j <= r; e_r =
// exp(-sum_{j<=r} d_j / j). Requires 0 <= r <= delta n, n(1-eta) <= m <= n,
// 1/n <= delta <= 1/2, 0 <= eta <= 1/2.
Prop1Report proposition1_check(std::span<const Rational> d, std::size_t n, std::size_t r,
                               std::size_t m, double eta, double delta,
                               BackendChoice backend = BackendChoice::automatic);

}  // namespace logasm
