#include "logasm/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logasm/errors.hpp"

namespace logasm {

PolygonalPath::PolygonalPath(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  if (t_.size() < 2 || t_.size() != y_.size()) {
    throw ArgumentError("path needs matching breakpoint and value lists of length >= 2");
  }
  if (t_.front() != 0.0 || t_.back() != 1.0) throw ArgumentError("path must span [0, 1]");
  if (y_.front() != 0.0) throw ArgumentError("path must start at 0");
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw ArgumentError("breakpoints must be strictly increasing");
  }
  for (double v : y_) {
    if (!std::isfinite(v)) throw ArgumentError("path values must be finite");
  }
}

double PolygonalPath::operator()(double t) const {
  if (t <= 0.0) return y_.front();
  if (t >= 1.0) return y_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin());
  const double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
  return y_[i - 1] + w * (y_[i] - y_[i - 1]);
}

double PolygonalPath::sup_norm() const noexcept {
  double best = 0.0;
  for (double v : y_) best = std::max(best, std::abs(v));
  return best;
}

PolygonalPath PolygonalPath::refined(std::size_t parts) const {
  if (parts == 0) throw ArgumentError("refinement factor must be positive");
  if (parts == 1) return *this;
  std::vector<double> t{0.0};
  std::vector<double> y{0.0};
  for (std::size_t i = 1; i < t_.size(); ++i) {
    for (std::size_t p = 1; p < parts; ++p) {
      const double w = static_cast<double>(p) / static_cast<double>(parts);
      t.push_back(t_[i - 1] + w * (t_[i] - t_[i - 1]));
      y.push_back(y_[i - 1] + w * (y_[i] - y_[i - 1]));
    }
    t.push_back(t_[i]);
    y.push_back(y_[i]);
  }
  return PolygonalPath(std::move(t), std::move(y));
}

double sup_distance(const PolygonalPath& a, const PolygonalPath& b) {
  std::vector<double> grid;
  grid.reserve(a.size() + b.size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(),
             b.breakpoints().end(), std::back_inserter(grid));
  double best = 0.0;
  for (double t : grid) best = std::max(best, std::abs(a(t) - b(t)));
  return best;
}

std::vector<std::size_t> simplify_polyline(std::span<const double> x, std::span<const double> y,
                                           double delta, std::span<const std::uint8_t> forced) {
  if (x.size() != y.size()) throw DimensionMismatchError("x and y differ in length");
  if (!forced.empty() && forced.size() != x.size()) {
    throw DimensionMismatchError("forced mask differs in length");
  }
  if (delta < 0.0) throw ArgumentError("delta must be nonnegative");
  std::vector<std::size_t> kept;
  if (x.empty()) return kept;
  const std::size_t last = x.size() - 1;
  kept.push_back(0);
  std::size_t anchor = 0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  while (anchor < last) {
    double lo = -inf;
    double hi = inf;
    std::size_t best = anchor + 1;
    for (std::size_t i = anchor + 1; i <= last; ++i) {
      const double dx = x[i] - x[anchor];
      const double slope = (y[i] - y[anchor]) / dx;
      if (slope >= lo && slope <= hi) best = i;
      if (!forced.empty() && forced[i]) break;
      lo = std::max(lo, (y[i] - delta - y[anchor]) / dx);
      hi = std::min(hi, (y[i] + delta - y[anchor]) / dx);
      if (lo > hi) break;
    }
    kept.push_back(best);
    anchor = best;
  }
  return kept;
}

}  // namespace logasm
