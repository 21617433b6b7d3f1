#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "logasm/additive.hpp"
#include "logasm/model.hpp"
#include "logasm/path.hpp"

namespace logasm {

struct LilOptions {
  IteratedLog convention = IteratedLog::clamped;
  bool indicator_form = true;
  double tol = 1e-4;           // bisection accuracy per distance
  double simplify_tol = 1e-3;  // polyline simplification error, in units of U
  double grid_step = 1.0 / 64; // m runs over a geometric grid with this ratio - 1
  double margin = 0.1;         // slack around [-1, 1] and the disk
  std::size_t keep_paths = 0;  // U_n of the first replicas, for plotting
};

struct LilReplica {
  double max_distance = 0.0;  // max over the m grid of rho(U_m, K)
  std::size_t argmax = 0;
  double endpoint = 0.0;      // U_n(1)
  double midpoint = 0.0;      // U_n(1/2)
  double form_gap = 0.0;      // sup_m |raw - indicator| / beta(n)
};

struct LilSummary {
  std::size_t n = 0;
  std::size_t n1 = 0;
  std::uint64_t seed = 0;
  double condition6 = 0.0;  // max_{j<=n} |a_j| sqrt(L_2 B(j)) / B(j)
  std::size_t grid_size = 0;
  std::vector<LilReplica> replicas;
  double median_max_distance = 0.0;
  double fraction_outside_interval = 0.0;  // |U_n(1)| > 1 + margin
  double fraction_outside_disk = 0.0;      // u^2 + (v-u)^2 > (1 + margin)^2 / 2
  double mean_form_gap = 0.0;
  std::vector<PolygonalPath> paths;
};

// Monte Carlo over `replicas` draws from mu_n (replica r uses
// Rng::stream(seed, r)). rho(U_m, K) is evaluated for m on a geometric grid
// from n1 to n together with every component size in range and its
// predecessor; the polyline is simplified once per replica, which moves
// each distance by at most simplify_tol.
LilSummary lil_experiment(const AssemblySpec& spec, const AdditiveFunction& h, std::size_t n,
                          std::size_t n1, std::size_t replicas, std::uint64_t seed,
                          const LilOptions& options = {});

struct ExceedanceEstimate {
  std::size_t hits = 0;
  std::size_t replicas = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Fraction of replicas with max_{n1<=m<=n} |h(sigma,m) - A(m)| / psi_m >= 1.
// psi is indexed by m and must cover 0..n.
ExceedanceEstimate exceedance_scan(const AssemblySpec& spec, const AdditiveFunction& h,
                                   std::span<const double> psi, std::size_t n, std::size_t n1,
                                   std::size_t replicas, std::uint64_t seed,
                                   bool indicator_form = false);

// psi_m = B(m) gamma_s(eps) at B(m), for m = 0..n.
std::vector<double> gamma_threshold(const CenteringProfile& profile, unsigned s, double eps,
                                    IteratedLog convention = IteratedLog::clamped);

}  // namespace logasm
