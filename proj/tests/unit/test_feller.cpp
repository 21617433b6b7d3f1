#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logasm/errors.hpp"
#include "logasm/feller.hpp"

using namespace logasm;

namespace {

RateSequence harmonic_rates(std::size_t J) {
  std::vector<double> v(J);
  for (std::size_t j = 1; j <= J; ++j) v[j - 1] = 1.0 / double(j);
  return RateSequence(std::move(v));
}

}  // namespace

TEST_SUITE("feller") {
  TEST_CASE("gamma ladder closed forms") {
    const double B = std::exp(std::numbers::e);  // L_2 B = 1
    CHECK(gamma_ladder(2, 0.0, B) == doctest::Approx(std::sqrt(2.0)));
    CHECK(gamma_ladder(2, 0.5, B) == doctest::Approx(std::sqrt(3.0)));
    const double big = 1e40;
    const double l2 = std::log(std::log(big));
    const double l3 = std::log(l2);
    const double l4 = std::log(l3);
    const auto strict = IteratedLog::strict;
    CHECK(gamma_ladder(3, 0.2, big, strict) == doctest::Approx(std::sqrt(2.0 * (l2 + 1.5 * 1.2 * l3))));
    CHECK(gamma_ladder(4, -0.5, big, strict) ==
          doctest::Approx(std::sqrt(2.0 * (l2 + 1.5 * l3 + 0.5 * l4))));
    // Clamped: L_4 B = log max(L_3 B, e) = 1 since L_3 B < e here.
    CHECK(gamma_ladder(4, -0.5, big) == doctest::Approx(std::sqrt(2.0 * (l2 + 1.5 * l3 + 0.5))));
    CHECK(std::isnan(gamma_ladder(2, 0.0, 0.5, IteratedLog::strict)));
    CHECK_THROWS_AS(gamma_ladder(1, 0.0, B), ArgumentError);
  }

  TEST_CASE("a = 0 converges with zero terms") {
    const auto report = feller_terms(AdditiveFunction::constant(0.0, 50), harmonic_rates(50),
                                     PhiSpec::ladder(2, 0.5), 50);
    CHECK(report.verdict == SeriesVerdict::converges);
    for (double t : report.terms) CHECK(t == 0.0);
    CHECK(report.partial_sums.back() == 0.0);
  }

  TEST_CASE("ladder classification on harmonic rates") {
    const std::size_t J = 2000;
    const auto h = AdditiveFunction::constant(1.0, J);
    const auto up = feller_terms(h, harmonic_rates(J), PhiSpec::ladder(2, 0.5), J);
    const auto down = feller_terms(h, harmonic_rates(J), PhiSpec::ladder(2, -0.5), J);
    CHECK(up.verdict == SeriesVerdict::converges);
    CHECK(down.verdict == SeriesVerdict::diverges);
    CHECK(up.terms.size() == J);
    // Terms and partial sums are consistent, and the smaller phi gives larger terms.
    double sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      sum += down.terms[j];
      CHECK(down.partial_sums[j] == doctest::Approx(sum));
    }
    CHECK(down.partial_sums.back() > up.partial_sums.back());
    for (std::size_t s : {3u, 4u}) {
      CHECK(feller_terms(h, harmonic_rates(J), PhiSpec::ladder(s, 0.5), J).verdict == SeriesVerdict::converges);
      CHECK(feller_terms(h, harmonic_rates(J), PhiSpec::ladder(s, -0.5), J).verdict == SeriesVerdict::diverges);
    }
  }

  TEST_CASE("tabulated phi") {
    const auto h = AdditiveFunction::constant(1.0, 12);
    std::vector<double> rising;
    for (int j = 1; j <= 12; ++j) rising.push_back(1.0 + 0.1 * j);
    CHECK(feller_terms(h, harmonic_rates(12), PhiSpec::table(rising), 12).verdict ==
          SeriesVerdict::inconclusive);
    auto bumpy = rising;
    bumpy[5] = 0.1;
    const auto refused = feller_terms(h, harmonic_rates(12), PhiSpec::table(bumpy), 12);
    CHECK(refused.verdict == SeriesVerdict::refused);
    CHECK(refused.terms.size() == 12);
    auto negative = rising;
    negative[0] = -1.0;
    CHECK(feller_terms(h, harmonic_rates(12), PhiSpec::table(negative), 12).verdict ==
          SeriesVerdict::refused);
    CHECK_THROWS_AS(feller_terms(h, harmonic_rates(12), PhiSpec::table(rising), 9), ArgumentError);
    CHECK_THROWS_AS(feller_terms(h, harmonic_rates(12), PhiSpec::table({1.0}), 12), BoundsError);
  }
}
