#include "logasm/lil.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "logasm/errors.hpp"
#include "logasm/feller.hpp"
#include "logasm/parallel.hpp"
#include "logasm/rng.hpp"
#include "logasm/sampler.hpp"
#include "logasm/strassen.hpp"

namespace logasm {

namespace {

using Sizes = std::vector<std::pair<std::size_t, std::uint32_t>>;

void check_range(std::size_t n, std::size_t n1, std::size_t replicas) {
  if (replicas == 0) throw ArgumentError("replicas must be at least 1");
  if (n == 0) throw ArgumentError("n must be positive");
  if (n1 == 0 || n1 > n) throw ArgumentError("n1 must lie in 1..n");
}

// Running h(sigma, m) for m = 0..n.
std::vector<double> running_values(const AdditiveFunction& h, const Sizes& sizes, std::size_t n,
                                   bool indicator_form) {
  std::vector<double> out(n + 1, 0.0);
  for (auto [j, c] : sizes) out[j] = indicator_form ? h.a(j) : h.h(j, c);
  for (std::size_t m = 1; m <= n; ++m) out[m] += out[m - 1];
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

LilSummary lil_experiment(const AssemblySpec& spec, const AdditiveFunction& h, std::size_t n,
                          std::size_t n1, std::size_t replicas, std::uint64_t seed,
                          const LilOptions& options) {
  check_range(n, n1, replicas);
  const RateSequence rates = derive_rates(spec, n, BackendChoice::floating);
  const CenteringProfile profile = centering_profile(h, rates, n);
  std::vector<double> beta(n + 1, 0.0);
  for (std::size_t m = 1; m <= n; ++m) {
    beta[m] = lil_scale(profile.B2[m], options.convention).value_or(0.0);
  }
  if (!(beta[n1] > 0.0)) throw ArgumentError("beta(n1) is undefined; raise n1");

  LilSummary summary;
  summary.n = n;
  summary.n1 = n1;
  summary.seed = seed;
  for (std::size_t j = 1; j <= n; ++j) {
    if (profile.B2[j] <= 0.0) continue;
    const double B = std::sqrt(profile.B2[j]);
    const double ll = iterated_log(B, 2, options.convention).value_or(0.0);
    summary.condition6 =
        std::max(summary.condition6, std::abs(h.a(j)) * std::sqrt(std::max(ll, 0.0)) / B);
  }

  // Distinct abscissae B^2(i): compressed[i] is the index of the last i'
  // sharing B^2(i), and `distinct` lists those representatives.
  std::vector<std::size_t> distinct{0};
  std::vector<std::size_t> slot(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    if (profile.B2[i] > profile.B2[distinct.back()]) {
      distinct.push_back(i);
    } else if (distinct.size() > 1) {
      distinct.back() = i;
    }
    slot[i] = distinct.size() - 1;
  }
  std::vector<double> xs(distinct.size());
  for (std::size_t k = 0; k < distinct.size(); ++k) xs[k] = profile.B2[distinct[k]];

  std::vector<std::size_t> base_grid;
  for (std::size_t m = n1; m < n;) {
    base_grid.push_back(m);
    const auto next = static_cast<std::size_t>(std::floor(static_cast<double>(m) * (1.0 + options.grid_step)));
    m = std::max(m + 1, next);
  }
  base_grid.push_back(n);

  const ComponentSizeSampler sampler(rates, n);
  const double delta = options.simplify_tol * beta[n1];
  std::vector<LilReplica> rows(replicas);
  std::vector<std::size_t> grid_sizes(replicas);
  std::vector<PolygonalPath> kept(std::min(options.keep_paths, replicas), PolygonalPath::zero());

  parallel_for(replicas, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Sizes sizes = sampler.sample_sparse(rng);
    const auto values = running_values(h, sizes, n, options.indicator_form);
    std::vector<double> ys(distinct.size());
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      const std::size_t i = distinct[k];
      ys[k] = k == 0 ? 0.0 : values[i] - profile.A[i];
    }

    std::set<std::size_t> grid(base_grid.begin(), base_grid.end());
    for (auto [j, c] : sizes) {
      if (j >= n1) grid.insert(j);
      if (j > n1) grid.insert(j - 1);
    }
    std::vector<std::uint8_t> forced(distinct.size(), 0);
    for (std::size_t m : grid) forced[slot[m]] = 1;
    const auto vertices = simplify_polyline(xs, ys, delta, forced);

    LilReplica row;
    row.max_distance = -1.0;
    for (std::size_t m : grid) {
      const double scale_x = profile.B2[m];
      const double scale_y = beta[m];
      std::vector<double> t;
      std::vector<double> y;
      for (std::size_t v : vertices) {
        if (v >= slot[m]) break;
        t.push_back(xs[v] / scale_x);
        y.push_back(ys[v] / scale_y);
      }
      t.push_back(1.0);
      y.push_back((values[m] - profile.A[m]) / scale_y);
      const PolygonalPath path(std::move(t), std::move(y));
      const double d = strassen_distance(path, options.tol);
      if (d > row.max_distance) {
        row.max_distance = d;
        row.argmax = m;
      }
      if (m == n && r < kept.size()) kept[r] = path;
    }

    row.endpoint = (values[n] - profile.A[n]) / beta[n];
    // U_n(1/2): interpolate the unsimplified polyline at B^2(n)/2.
    const double half = 0.5 * profile.B2[n];
    const auto it = std::lower_bound(xs.begin(), xs.end(), half);
    const std::size_t k = static_cast<std::size_t>(it - xs.begin());
    double mid = ys[k];
    if (k > 0 && xs[k] > half) {
      const double w = (half - xs[k - 1]) / (xs[k] - xs[k - 1]);
      mid = ys[k - 1] + w * (ys[k] - ys[k - 1]);
    }
    row.midpoint = mid / beta[n];

    // raw and indicator forms differ only where some s_j >= 2.
    double gap = 0.0;
    double sup_gap = 0.0;
    for (auto [j, c] : sizes) {
      gap += h.h(j, c) - h.a(j);
      sup_gap = std::max(sup_gap, std::abs(gap));
    }
    row.form_gap = sup_gap / beta[n];

    rows[r] = row;
    grid_sizes[r] = grid.size();
  });

  summary.replicas = std::move(rows);
  summary.paths = std::move(kept);
  summary.grid_size = *std::max_element(grid_sizes.begin(), grid_sizes.end());
  std::vector<double> distances;
  std::size_t outside_interval = 0;
  std::size_t outside_disk = 0;
  double gap_total = 0.0;
  const double edge = 1.0 + options.margin;
  for (const auto& row : summary.replicas) {
    distances.push_back(row.max_distance);
    if (std::abs(row.endpoint) > edge) ++outside_interval;
    const double u = row.midpoint;
    const double v = row.endpoint;
    if (u * u + (v - u) * (v - u) > 0.5 * edge * edge) ++outside_disk;
    gap_total += row.form_gap;
  }
  const double count = static_cast<double>(replicas);
  summary.median_max_distance = median(std::move(distances));
  summary.fraction_outside_interval = static_cast<double>(outside_interval) / count;
  summary.fraction_outside_disk = static_cast<double>(outside_disk) / count;
  summary.mean_form_gap = gap_total / count;
  return summary;
}

ExceedanceEstimate exceedance_scan(const AssemblySpec& spec, const AdditiveFunction& h,
                                   std::span<const double> psi, std::size_t n, std::size_t n1,
                                   std::size_t replicas, std::uint64_t seed,
                                   bool indicator_form) {
  check_range(n, n1, replicas);
  if (psi.size() < n + 1) throw BoundsError("psi must cover m = 0..n");
  for (std::size_t m = n1; m <= n; ++m) {
    if (!(psi[m] > 0.0)) throw ArgumentError("psi_" + std::to_string(m) + " must be positive");
  }
  const RateSequence rates = derive_rates(spec, n, BackendChoice::floating);
  const CenteringProfile profile = centering_profile(h, rates, n);
  const ComponentSizeSampler sampler(rates, n);

  std::vector<std::uint8_t> hit(replicas, 0);
  parallel_for(replicas, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const auto values = running_values(h, sampler.sample_sparse(rng), n, indicator_form);
    for (std::size_t m = n1; m <= n; ++m) {
      if (std::abs(values[m] - profile.A[m]) >= psi[m]) {
        hit[r] = 1;
        break;
      }
    }
  });

  ExceedanceEstimate out;
  out.replicas = replicas;
  out.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(replicas);
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(replicas));
  return out;
}

std::vector<double> gamma_threshold(const CenteringProfile& profile, unsigned s, double eps,
                                    IteratedLog convention) {
  std::vector<double> out(profile.B2.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double B = std::sqrt(profile.B2[m]);
    out[m] = B * gamma_ladder(s, eps, B, convention);
  }
  return out;
}

}  // namespace logasm
