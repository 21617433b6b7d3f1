#include "logasm/strassen.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "logasm/errors.hpp"

namespace logasm {

namespace {

constexpr double kEnergySlack = 1e-12;

// Taut string through [lower_i, upper_i] at t_i with both end windows
// collapsed to points. The string runs straight from the current anchor as
// long as some slope meets every window seen so far; once a window falls
// entirely above (below) the admissible cone it bends at the lower (upper)
// vertex that defined the violated side of the cone.
double pinned_string_energy(const std::vector<double>& t, const std::vector<double>& lower,
                            const std::vector<double>& upper) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t last = t.size() - 1;
  std::size_t anchor = 0;
  double y_anchor = lower[0];
  double energy = 0.0;
  while (anchor < last) {
    double lo = -inf;
    double hi = inf;
    std::size_t lo_at = anchor;
    std::size_t hi_at = anchor;
    std::size_t next = last;
    double y_next = lower[last];
    for (std::size_t i = anchor + 1; i <= last; ++i) {
      const double dt = t[i] - t[anchor];
      const double s_lo = (lower[i] - y_anchor) / dt;
      const double s_hi = (upper[i] - y_anchor) / dt;
      if (s_lo > hi) {
        next = hi_at;
        y_next = upper[hi_at];
        break;
      }
      if (s_hi < lo) {
        next = lo_at;
        y_next = lower[lo_at];
        break;
      }
      if (s_lo > lo) {
        lo = s_lo;
        lo_at = i;
      }
      if (s_hi < hi) {
        hi = s_hi;
        hi_at = i;
      }
      if (i == last) {
        next = last;
        y_next = y_anchor + 0.5 * (lo + hi) * dt;
      }
    }
    const double dy = y_next - y_anchor;
    energy += dy * dy / (t[next] - t[anchor]);
    anchor = next;
    y_anchor = y_next;
  }
  return energy;
}

}  // namespace

double minimal_tube_energy(std::span<const double> t, std::span<const double> lower,
                           std::span<const double> upper) {
  const std::size_t k = t.size();
  if (k < 2 || lower.size() != k || upper.size() != k) {
    throw DimensionMismatchError("tube arrays must share a length >= 2");
  }
  for (std::size_t i = 1; i < k; ++i) {
    if (!(t[i] > t[i - 1])) throw ArgumentError("grid must be strictly increasing");
    if (lower[i] > upper[i]) return std::numeric_limits<double>::infinity();
  }
  // Mirror about t_{k-1}: indices 0..k-1 then k-2..0 at 2 t_{k-1} - t_i.
  const double pivot = t[k - 1];
  std::vector<double> tt;
  std::vector<double> lo;
  std::vector<double> hi;
  tt.reserve(2 * k - 1);
  lo.reserve(2 * k - 1);
  hi.reserve(2 * k - 1);
  for (std::size_t i = 0; i < k; ++i) {
    tt.push_back(t[i]);
    lo.push_back(i == 0 ? 0.0 : lower[i]);
    hi.push_back(i == 0 ? 0.0 : upper[i]);
  }
  for (std::size_t i = k - 1; i-- > 0;) {
    tt.push_back(2.0 * pivot - t[i]);
    lo.push_back(i == 0 ? 0.0 : lower[i]);
    hi.push_back(i == 0 ? 0.0 : upper[i]);
  }
  return 0.5 * pinned_string_energy(tt, lo, hi);
}

double minimal_tube_energy(const PolygonalPath& f, double eps) {
  if (eps < 0.0) return std::numeric_limits<double>::infinity();
  const auto y = f.values();
  std::vector<double> lower(y.size());
  std::vector<double> upper(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    lower[i] = y[i] - eps;
    upper[i] = y[i] + eps;
  }
  return minimal_tube_energy(f.breakpoints(), lower, upper);
}

double strassen_distance(const PolygonalPath& f, const StrassenOptions& options) {
  if (!(options.tol > 0.0)) throw ArgumentError("tol must be positive");
  const PolygonalPath path = f.refined(options.refine);
  const auto feasible = [&](double eps) {
    return minimal_tube_energy(path, eps) <= 1.0 + kEnergySlack;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = path.sup_norm();  // g = 0 is always within sup|f|
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double strassen_distance(const PolygonalPath& f, double tol) {
  return strassen_distance(f, StrassenOptions{tol, 1});
}

}  // namespace logasm
