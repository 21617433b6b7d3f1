#pragma once

#include <cstddef>
#include <span>

#include "logasm/path.hpp"

namespace logasm {

struct StrassenOptions {
  double tol = 1e-9;       // absolute accuracy of the returned distance
  std::size_t refine = 1;  // subdivide each segment before solving
};

// Minimal energy sum (g_i - g_{i-1})^2 / (t_i - t_{i-1}) over grid values
// with g_0 = 0 and lower_i <= g_i <= upper_i for i >= 1, right end free.
// Solved as a taut string: the tube is mirrored about the last grid point,
// which pins both ends, and the energy of the symmetric solution is halved.
double minimal_tube_energy(std::span<const double> t, std::span<const double> lower,
                           std::span<const double> upper);

// Minimal energy of a function within eps of f in sup norm, starting at 0.
double minimal_tube_energy(const PolygonalPath& f, double eps);

// Sup-norm distance from f to the set of absolutely continuous g on [0, 1]
// with g(0) = 0 and energy int g'^2 <= 1. Bisection on eps; eps is
// feasible iff the tube energy is at most 1. The minimal-energy function in
// a polygonal tube is polygonal on the same grid, so the check is exact.
double strassen_distance(const PolygonalPath& f, const StrassenOptions& options);
double strassen_distance(const PolygonalPath& f, double tol = 1e-9);

}  // namespace logasm
