#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace logasm {

// Piecewise-linear function on [0, 1] through (t_i, y_i) with t_0 = 0 <
// t_1 < ... < t_k = 1 and y_0 = 0.
class PolygonalPath {
 public:
  PolygonalPath(std::vector<double> t, std::vector<double> y);

  static PolygonalPath zero() { return PolygonalPath({0.0, 1.0}, {0.0, 0.0}); }
  static PolygonalPath linear(double slope) { return PolygonalPath({0.0, 1.0}, {0.0, slope}); }

  std::size_t size() const noexcept { return t_.size(); }
  std::span<const double> breakpoints() const noexcept { return t_; }
  std::span<const double> values() const noexcept { return y_; }

  double operator()(double t) const;
  double sup_norm() const noexcept;
  // Same path with every segment cut into `parts` equal pieces.
  PolygonalPath refined(std::size_t parts) const;

 private:
  std::vector<double> t_;
  std::vector<double> y_;
};

// sup |a - b|. Both are linear between consecutive points of the merged
// breakpoint set, so the maximum is attained there.
double sup_distance(const PolygonalPath& a, const PolygonalPath& b);

// Indices of a subsequence of the polyline (x_i, y_i), x strictly
// increasing, whose interpolant stays within `delta` of y at every x_i
// (hence everywhere). The first and last points and every index with
// forced[i] set are kept. Greedy: each kept segment is extended as far as
// the cone of admissible slopes allows.
std::vector<std::size_t> simplify_polyline(std::span<const double> x, std::span<const double> y,
                                           double delta, std::span<const std::uint8_t> forced = {});

}  // namespace logasm
