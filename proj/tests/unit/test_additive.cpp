#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logasm/additive.hpp"
#include "logasm/errors.hpp"
#include "logasm/partitions.hpp"
#include "logasm/sampler.hpp"

using namespace logasm;

TEST_SUITE("additive") {
  TEST_CASE("iterated logs") {
    using std::numbers::e;
    CHECK(*iterated_log(std::exp(e), 2, IteratedLog::strict) == doctest::Approx(1.0));
    CHECK(*iterated_log(std::exp(e), 2, IteratedLog::clamped) == doctest::Approx(1.0));
    CHECK_FALSE(iterated_log(0.5, 2, IteratedLog::strict).has_value());  // log 0.5 < 0
    CHECK_FALSE(iterated_log(-1.0, 1, IteratedLog::strict).has_value());
    CHECK(*iterated_log(0.5, 3, IteratedLog::clamped) == 1.0);
    CHECK(*iterated_log(2.0, 1, IteratedLog::clamped) == doctest::Approx(1.0));
    CHECK_THROWS_AS(iterated_log(2.0, 0, IteratedLog::strict), ArgumentError);
  }

  TEST_CASE("partial values") {
    const auto count = AdditiveFunction::constant(1.0, 10);
    const ComponentVector s{1, 1, 0};
    CHECK(partial_value(count, s, 3) == 2.0);
    CHECK(partial_value(count, s, 1) == 1.0);
    CHECK_THROWS_AS(partial_value(count, s, 4), BoundsError);

    const auto size = AdditiveFunction::completely_additive([](std::size_t j) { return double(j); }, 12);
    for (const auto& level : enumerate_level(12)) CHECK(partial_value(size, level, 12) == 12.0);
    CHECK(partial_value(AdditiveFunction::constant(0.0, 3), s, 3) == 0.0);

    const auto squares = AdditiveFunction::general(
        [](std::size_t, std::uint32_t k) { return double(k) * k; }, 5);
    CHECK(partial_value(squares, ComponentVector{3, 1}, 2) == 10.0);
    CHECK(partial_indicator_value(squares, ComponentVector{3, 1}, 2) == 2.0);
    CHECK_FALSE(squares.is_completely_additive());

    const auto table = AdditiveFunction::from_table({{0.0, 1.0, 5.0}, {0.0, -2.0}});
    CHECK(table.h(1, 2) == 5.0);
    CHECK(table.a(2) == -2.0);
    CHECK_THROWS_AS(table.h(2, 2), BoundsError);
    CHECK_THROWS_AS(table.a(3), BoundsError);
  }

  TEST_CASE("construction checks") {
    CHECK_THROWS_AS(AdditiveFunction::general([](std::size_t, std::uint32_t) { return 1.0; }, 3),
                    ArgumentError);
    CHECK_THROWS_AS(AdditiveFunction::from_table({{1.0, 2.0}}), ArgumentError);
    CHECK_THROWS_AS(AdditiveFunction::from_table({{0.0}}), ArgumentError);
    CHECK_THROWS_AS(AdditiveFunction::completely_additive([](std::size_t) { return NAN; }, 3),
                    ArgumentError);
  }

  TEST_CASE("centering and scaling") {
    const RateSequence ones(std::vector<double>(20, 1.0));
    const auto h = AdditiveFunction::constant(1.0, 20);
    const double q = std::exp(-1.0);
    for (std::size_t m : {1, 7, 20}) {
      const auto cs = centering_scaling(h, ones, m);
      CHECK(cs.A == doctest::Approx(m * (1 - q)).epsilon(1e-14));
      CHECK(cs.B2 == doctest::Approx(m * q * (1 - q)).epsilon(1e-14));
    }
    const auto zero = centering_scaling(AdditiveFunction::constant(0.0, 20), ones, 20);
    CHECK(zero.A == 0.0);
    CHECK(zero.B2 == 0.0);
    CHECK_FALSE(zero.beta.has_value());

    const auto perm = derive_rates(AssemblySpec::permutations(), 2);
    const auto two = centering_scaling(h, perm, 2);
    CHECK(two.A == doctest::Approx((1 - q) + (1 - std::exp(-0.5))).epsilon(1e-14));
    // B(2) < 1, so L_2 B is undefined under the strict convention.
    CHECK_FALSE(two.beta.has_value());
    const auto clamped = centering_scaling(h, perm, 2, IteratedLog::clamped);
    REQUIRE(clamped.beta.has_value());
    CHECK(*clamped.beta == doctest::Approx(std::sqrt(2.0 * clamped.B2)));
  }

  TEST_CASE("profile is monotone and additive over ranges") {
    const auto rates = derive_rates(AssemblySpec::ewens(Rational(1, 2)), 300, BackendChoice::floating);
    const auto h = AdditiveFunction::completely_additive(
        [](std::size_t j) { return std::sin(double(j)); }, 300);
    const auto p = centering_profile(h, rates, 300);
    for (std::size_t m = 1; m <= 300; ++m) CHECK(p.B2[m] >= p.B2[m - 1]);
    // Sum over 101..300 computed directly.
    double A = 0.0, B2 = 0.0;
    for (std::size_t j = 101; j <= 300; ++j) {
      const double e = std::exp(-rates.rate(j));
      A += h.a(j) * (1 - e);
      B2 += h.a(j) * h.a(j) * e * (1 - e);
    }
    CHECK(p.A[300] - p.A[100] == doctest::Approx(A).epsilon(1e-12));
    CHECK(p.B2[300] - p.B2[100] == doctest::Approx(B2).epsilon(1e-12));
    CHECK_THROWS_AS(centering_profile(h, rates, 301), BoundsError);
  }

  TEST_CASE("build_process matches a direct recomputation") {
    const std::size_t n = 2000;
    const auto rates = derive_rates(AssemblySpec::permutations(), n, BackendChoice::floating);
    ComponentSizeSampler sampler(rates, n);
    Rng rng(17);
    const auto s = sampler.sample(rng);
    // a_j vanishes for odd j past 50, so those breakpoints collapse.
    const auto h = AdditiveFunction::completely_additive(
        [](std::size_t j) { return (j > 50 && j % 2) ? 0.0 : 1.0 + 1.0 / double(j); }, n);
    for (bool indicator : {true, false}) {
      ProcessOptions opts;
      opts.indicator_form = indicator;
      opts.convention = IteratedLog::clamped;
      const auto path = build_process(h, rates, s, n, opts);
      const auto cs = centering_scaling(h, rates, n, IteratedLog::clamped);
      REQUIRE(cs.beta.has_value());
      const double raw = indicator ? partial_indicator_value(h, s, n) : partial_value(h, s, n);
      CHECK(path.values().back() == (raw - cs.A) / *cs.beta);
      CHECK(path.breakpoints().back() == 1.0);
      CHECK(path(0.0) == 0.0);

      std::size_t k = 1;
      for (std::size_t i = 1; i <= n; ++i) {
        const auto ci = centering_scaling(h, rates, i);
        const double t = ci.B2 / cs.B2;
        const double v = indicator ? partial_indicator_value(h, s, i) : partial_value(h, s, i);
        CHECK(std::abs(path(t) - (v - ci.A) / *cs.beta) < 1e-12);
        if (h.a(i) != 0.0) ++k;
      }
      CHECK(path.size() == k);
    }
  }

  TEST_CASE("path is flat once a vanishes") {
    const std::size_t n = 200;
    const auto rates = derive_rates(AssemblySpec::permutations(), n, BackendChoice::floating);
    const auto h = AdditiveFunction::completely_additive(
        [](std::size_t j) { return j <= 60 ? 1.0 : 0.0; }, n);
    Rng rng(3);
    const auto s = ComponentSizeSampler(rates, n).sample(rng);
    ProcessOptions opts;
    opts.convention = IteratedLog::clamped;
    const auto path = build_process(h, rates, s, n, opts);
    CHECK(path.breakpoints().back() == 1.0);
    CHECK(path.size() == 61);
  }

  TEST_CASE("absent beta refuses construction") {
    const auto rates = derive_rates(AssemblySpec::permutations(), 3);
    const auto h = AdditiveFunction::constant(1.0, 3);
    CHECK_THROWS_AS(build_process(h, rates, ComponentVector{0, 0, 1}, 3), ArgumentError);
    CHECK_THROWS_AS(build_process(AdditiveFunction::constant(0.0, 3), rates, ComponentVector{0, 0, 1}, 3,
                                  ProcessOptions{IteratedLog::clamped, true}),
                    ArgumentError);
  }
}
