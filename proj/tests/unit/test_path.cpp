#include <doctest.h>

#include <cmath>
#include <limits>

#include "logasm/errors.hpp"
#include "logasm/path.hpp"
#include "logasm/rng.hpp"

using namespace logasm;

TEST_SUITE("path") {
  TEST_CASE("construction checks") {
    CHECK_THROWS_AS(PolygonalPath({0.0}, {0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.0, 1.0}, {0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.1, 1.0}, {0.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.0, 0.9}, {0.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.0, 1.0}, {0.5, 0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.0, 0.5, 0.5, 1.0}, {0.0, 0.0, 0.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(PolygonalPath({0.0, 1.0}, {0.0, std::numeric_limits<double>::infinity()}),
                    ArgumentError);
  }

  TEST_CASE("evaluation, sup norm, refinement") {
    const PolygonalPath p({0.0, 0.25, 1.0}, {0.0, 1.0, -2.0});
    CHECK(p(0.125) == doctest::Approx(0.5));
    CHECK(p(0.625) == doctest::Approx(-0.5));
    CHECK(p(1.0) == doctest::Approx(-2.0));
    CHECK(p.sup_norm() == 2.0);
    const auto fine = p.refined(4);
    CHECK(fine.size() == 9);
    CHECK(sup_distance(p, fine) < 1e-15);
    CHECK(sup_distance(p, PolygonalPath::zero()) == 2.0);
    CHECK(sup_distance(PolygonalPath::linear(1.0), PolygonalPath::linear(-1.0)) == 2.0);
  }

  TEST_CASE("simplify_polyline stays within delta and keeps forced points") {
    Rng rng(77);
    const std::size_t k = 2000;
    std::vector<double> x(k), y(k);
    std::vector<std::uint8_t> forced(k, 0);
    double walk = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = static_cast<double>(i);
      walk += rng.uniform() - 0.5;
      y[i] = walk;
      if (i % 333 == 17) forced[i] = 1;
    }
    for (double delta : {0.0, 0.05, 0.5, 3.0}) {
      const auto kept = simplify_polyline(x, y, delta, forced);
      REQUIRE(kept.front() == 0);
      REQUIRE(kept.back() == k - 1);
      std::size_t next = 0;
      double worst = 0.0;
      for (std::size_t s = 0; s + 1 < kept.size(); ++s) {
        const std::size_t a = kept[s], b = kept[s + 1];
        CHECK(a < b);
        for (std::size_t i = a; i <= b; ++i) {
          const double interp = y[a] + (y[b] - y[a]) * (x[i] - x[a]) / (x[b] - x[a]);
          worst = std::max(worst, std::abs(interp - y[i]));
        }
      }
      CAPTURE(delta);
      CHECK(worst <= delta + 1e-9);
      for (std::size_t i = 0; i < k; ++i) {
        if (!forced[i]) continue;
        while (next < kept.size() && kept[next] < i) ++next;
        CHECK((next < kept.size() && kept[next] == i));
      }
      next = 0;
      if (delta >= 0.5) CHECK(kept.size() < k / 4);
    }
    CHECK_THROWS_AS(simplify_polyline(x, std::span<const double>(y).first(3), 1.0), DimensionMismatchError);
    CHECK_THROWS_AS(simplify_polyline(x, y, -1.0), ArgumentError);
  }
}
