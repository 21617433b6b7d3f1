#include <doctest.h>

#include <cmath>

#include "logasm/dist.hpp"
#include "logasm/errors.hpp"
#include "logasm/partitions.hpp"
#include "oracles.hpp"

using namespace logasm;

namespace {

const double kInvE = std::exp(-1.0);

}  // namespace

TEST_SUITE("dist") {
  TEST_CASE("closed-form anchors") {
    const RateSequence one(std::vector<Rational>{1});
    CHECK(tv_truncated(one, 1, 1).distance == doctest::Approx(1.0 - kInvE).epsilon(1e-14));

    // k_1 on S_3 takes 0, 1, 3 with probabilities 1/3, 1/2, 1/6 against
    // Poisson(1); only m = 1 and m = 3 carry excess conditional mass.
    const auto perm = derive_rates(AssemblySpec::permutations(), 3);
    const double closed = (0.5 - kInvE) + (1.0 / 6.0 - kInvE / 6.0);
    const double tv = tv_truncated(perm, 3, 1).distance;
    CHECK(std::abs(tv - closed) < 1e-10);
    CHECK(std::abs(tv - 0.2374818) < 1e-5);
  }

  TEST_CASE("one-sided sums agree in both directions and across backends") {
    for (const char* name : {"permutations", "ewens:1/2", "ewens:2", "set-partitions"}) {
      const auto rates = derive_rates(AssemblySpec::from_name(name), 40);
      for (std::size_t r : {1, 3, 10}) {
        const double a = tv_truncated(rates, 40, r, BackendChoice::exact).distance;
        const double b = tv_truncated_symmetric(rates, 40, r, BackendChoice::exact).distance;
        const double c = tv_truncated(rates, 40, r, BackendChoice::floating).distance;
        CAPTURE(name);
        CAPTURE(r);
        CHECK(std::abs(a - b) < 1e-12);
        CHECK(std::abs(a - c) < 1e-10);
      }
    }
  }

  TEST_CASE("tv_truncated matches the enumeration oracle") {
    for (const char* name : {"permutations", "ewens:1/2", "ewens:2"}) {
      const auto rates = derive_rates(AssemblySpec::from_name(name), 9);
      for (std::size_t n = 1; n <= 9; ++n) {
        for (std::size_t r = 1; r <= std::min<std::size_t>(n, 3); ++r) {
          CAPTURE(name);
          CAPTURE(n);
          CAPTURE(r);
          CHECK(std::abs(tv_truncated(rates, n, r).distance - tv_bruteforce(rates, n, r)) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("tv_bruteforce without conditioning is zero") {
    const auto rates = derive_rates(AssemblySpec::permutations(), 6);
    BruteForceOptions options;
    options.condition = false;
    CHECK(tv_bruteforce(rates, 6, 2, options) == doctest::Approx(0.0));
  }

  TEST_CASE("conditioned pmf with r = n is the exact law") {
    const auto spec = AssemblySpec::ewens(Rational(3, 2));
    const auto rates = derive_rates(spec, 7);
    for (const auto& s : enumerate_level(7)) {
      const auto p = conditioned_truncated_pmf(rates, 7, 7, s, BackendChoice::exact);
      REQUIRE(p.exact.has_value());
      CHECK(*p.exact == exact_law(spec, s));
    }
  }

  TEST_CASE("conditioned pmf is a probability law and is u-invariant") {
    const std::size_t n = 8;
    const std::size_t r = 2;
    const auto rates = derive_rates(AssemblySpec::permutations(), n);
    const auto scaled = derive_rates(AssemblySpec::permutations(Rational(5, 2)), n);
    Rational total = 0;
    for (std::uint32_t a = 0; a <= n; ++a) {
      for (std::uint32_t b = 0; a + 2 * b <= n; ++b) {
        const ComponentVector prefix{a, b};
        const auto p = conditioned_truncated_pmf(rates, n, r, prefix, BackendChoice::exact);
        const auto q = conditioned_truncated_pmf(scaled, n, r, prefix, BackendChoice::exact);
        CHECK(*p.exact == *q.exact);
        total += *p.exact;
      }
    }
    CHECK(total == 1);
    const auto over = conditioned_truncated_pmf(rates, n, r, ComponentVector{9, 0});
    CHECK(over.value == 0.0);
    CHECK_THROWS_AS(conditioned_truncated_pmf(rates, n, r, ComponentVector{1, 0, 0}),
                    DimensionMismatchError);
  }

  TEST_CASE("decay exponents") {
    CHECK(contour_exponent(1.0) == doctest::Approx(std::pow(std::sqrt(2.0) - 1.0, 2)));
    CHECK(contour_exponent(3.0) == doctest::Approx(1.0));
    CHECK(contour_exponent(5.0) == doctest::Approx(2.0));
    const auto e = fundamental_lemma_exponents(1.0);
    const double c = std::pow(std::sqrt(2.0) - 1.0, 2);
    CHECK(e.c0 == doctest::Approx(c / (2.0 * (1.0 + c))).epsilon(1e-14));
    CHECK(e.c1 == doctest::Approx(e.c0));
    CHECK(e.c1 == doctest::Approx(0.0732233).epsilon(1e-6));
    // c0 = c / (2 (1 + c)) < 1/2 for every c, so the cap never binds.
    const auto wide = fundamental_lemma_exponents(100.0);
    CHECK(wide.c1 == wide.c0);
    CHECK(wide.c1 < 0.5);
    CHECK_THROWS_AS(contour_exponent(0.0), ArgumentError);
  }

  TEST_CASE("fl_scan bound dominates every distance") {
    const std::vector<std::size_t> rs{1, 2, 4, 8, 16};
    const auto scan = fl_scan(AssemblySpec::ewens(Rational(1, 2)), 64, rs, 0.5);
    REQUIRE(scan.rows.size() == rs.size());
    for (const auto& row : scan.rows) CHECK(row.tv <= row.bound * (1.0 + 1e-12));
    CHECK(scan.fitted_points >= 2);
  }

  TEST_CASE("fl_scan argument errors") {
    const auto spec = AssemblySpec::permutations();
    const std::vector<std::size_t> single{1};
    const std::vector<std::size_t> too_big{1, 20};
    CHECK_THROWS_AS(fl_scan(spec, 64, single, 1.0), FitError);
    CHECK_THROWS_AS(fl_scan(spec, 64, too_big, 1.0), ArgumentError);
  }
}
