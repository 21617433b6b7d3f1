#include <doctest.h>

#include <cmath>

#include "logasm/errors.hpp"
#include "logasm/series.hpp"
#include "oracles.hpp"

using namespace logasm;

TEST_SUITE("series") {
  TEST_CASE("exp of the logarithmic series is the geometric series") {
    const std::size_t N = 256;
    std::vector<Rational> g(N + 1, 0);
    for (std::size_t j = 1; j <= N; ++j) g[j] = Rational(1, j);
    const auto D = exp_series(ExactSeries(g), N);
    for (std::size_t k = 0; k <= N; ++k) CHECK(D[k] == 1);
  }

  TEST_CASE("exp(z) has coefficients 1/k!") {
    const std::size_t N = 60;
    std::vector<Rational> g(N + 1, 0);
    g[1] = 1;
    const auto E = exp_series(ExactSeries(g), N);
    for (std::size_t k = 0; k <= N; ++k) CHECK(E[k] == Rational(BigInt(1), oracle::factorial(k)));
  }

  TEST_CASE("exp(g + h) = exp(g) exp(h)") {
    const std::size_t N = 40;
    std::vector<Rational> g(N + 1, 0);
    std::vector<Rational> h(N + 1, 0);
    std::vector<Rational> gh(N + 1, 0);
    for (std::size_t j = 1; j <= N; ++j) {
      g[j] = Rational(static_cast<long>(j % 5) - 2, static_cast<unsigned long>(j + 1));
      g[j].canonicalize();
      h[j] = Rational(3, static_cast<unsigned long>(j * j));
      h[j].canonicalize();
      gh[j] = g[j] + h[j];
    }
    const auto lhs = exp_series(ExactSeries(gh), N);
    const auto rhs = multiply(exp_series(ExactSeries(g), N), exp_series(ExactSeries(h), N), N);
    CHECK(lhs == rhs);
  }

  TEST_CASE("exp_series rejects a nonzero constant term") {
    CHECK_THROWS_AS(exp_series(FloatSeries(std::vector<double>{1.0, 1.0}), 4), ArgumentError);
  }

  TEST_CASE("float recurrence agrees with summing powers") {
    std::vector<double> p{0.0, 0.3, -0.2, 0.7, 0.1};
    const auto ref = oracle::exp_by_powers(p, 30);
    const auto got = exp_series(FloatSeries(p), 30);
    for (std::size_t k = 0; k <= 30; ++k) CHECK(got[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }

  TEST_CASE("ell_pmf of a single coordinate is the Poisson pmf") {
    const RateSequence rates(std::vector<Rational>{Rational(3, 2), 1, 1});
    const auto pmf = ell_pmf(rates, 0, 1, 10, BackendChoice::exact);
    for (std::size_t k = 0; k <= 10; ++k) {
      const double expected = std::exp(-1.5) * std::pow(1.5, k) / std::tgamma(k + 1.0);
      CHECK(pmf.probabilities[k] == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  TEST_CASE("ell_pmf backends agree and the mass sums to one") {
    const auto rates = derive_rates(AssemblySpec::ewens(Rational(1, 2)), 60);
    const auto ex = ell_pmf(rates, 5, 60, 400, BackendChoice::exact);
    const auto fl = ell_pmf(rates, 5, 60, 400, BackendChoice::floating);
    CHECK(ex.backend == Backend::exact);
    CHECK(fl.backend == Backend::floating);
    double total = 0.0;
    for (std::size_t m = 0; m <= 400; ++m) {
      CHECK(fl.probabilities[m] == doctest::Approx(ex.probabilities[m]).epsilon(1e-10));
      total += ex.probabilities[m];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t m = 1; m <= 5; ++m) CHECK(ex.probabilities[m] == 0.0);
  }

  TEST_CASE("lemma2_band for permutations is n exp(-H_n)") {
    const auto rates = derive_rates(AssemblySpec::permutations(), 4096, BackendChoice::floating);
    const std::vector<std::size_t> ns{1, 16, 256, 4096};
    const auto band = lemma2_band(rates, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      double H = 0.0;
      for (std::size_t j = 1; j <= ns[i]; ++j) H += 1.0 / static_cast<double>(j);
      CHECK(band[i] == doctest::Approx(static_cast<double>(ns[i]) * std::exp(-H)).epsilon(1e-10));
    }
  }
}
