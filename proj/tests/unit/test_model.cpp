#include <doctest.h>

#include "logasm/errors.hpp"
#include "logasm/model.hpp"
#include "logasm/partitions.hpp"
#include "oracles.hpp"

using namespace logasm;

TEST_SUITE("model") {
  TEST_CASE("preset rates") {
    const auto perm = derive_rates(AssemblySpec::permutations(), 5);
    for (std::size_t j = 1; j <= 5; ++j) CHECK(perm.exact_rate(j) == Rational(1, j));

    const auto ewens = derive_rates(AssemblySpec::ewens(2), 4);
    CHECK(ewens.exact_rate(1) == 2);
    CHECK(ewens.exact_rate(2) == 1);
    CHECK(ewens.exact_rate(3) == Rational(2, 3));

    const auto sets = derive_rates(AssemblySpec::set_partitions(), 5);
    CHECK(sets.exact_rate(4) == Rational(1, 24));

    const auto scaled = derive_rates(AssemblySpec::permutations(Rational(1, 2)), 3);
    CHECK(scaled.exact_rate(3) == Rational(1, 24));
  }

  TEST_CASE("floating rates agree with exact rates") {
    for (const char* name : {"permutations", "set-partitions", "ewens:3/2"}) {
      const auto spec = AssemblySpec::from_name(name);
      const auto exact = derive_rates(spec, 30, BackendChoice::exact);
      const auto fl = derive_rates(spec, 30, BackendChoice::floating);
      CHECK_FALSE(fl.has_exact());
      for (std::size_t j = 1; j <= 30; ++j) {
        CHECK(fl.rate(j) == doctest::Approx(exact.rate(j)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("from_name rejects unknown presets") {
    CHECK_THROWS_AS(AssemblySpec::from_name("nosuch"), ArgumentError);
    CHECK_THROWS_AS(AssemblySpec::from_name("ewens:-1"), ArgumentError);
  }

  TEST_CASE("total_count: n! for permutations, Bell numbers for set partitions") {
    const auto bell = oracle::bell_numbers(12);
    for (std::size_t n = 1; n <= 12; ++n) {
      CHECK(total_count(AssemblySpec::permutations(), n) == Rational(oracle::factorial(n)));
      CHECK(total_count(AssemblySpec::set_partitions(), n) == Rational(bell[n]));
    }
  }

  TEST_CASE("exact_law on S_3") {
    const auto spec = AssemblySpec::permutations();
    CHECK(exact_law(spec, ComponentVector{1, 1, 0}) == Rational(1, 2));
    CHECK(exact_law(spec, ComponentVector{0, 0, 1}) == Rational(1, 3));
    CHECK(exact_law(spec, ComponentVector{3, 0, 0}) == Rational(1, 6));
    CHECK_THROWS_AS(exact_law(spec, ComponentVector{0, 1, 0}), LevelMismatchError);
  }

  TEST_CASE("structure weights sum to the total count") {
    const auto spec = AssemblySpec::ewens(Rational(1, 2));
    for (std::size_t n = 1; n <= 9; ++n) {
      Rational sum = 0;
      for (const auto& s : enumerate_level(n)) sum += structure_weight(spec, s);
      CHECK(sum == total_count(spec, n));
    }
  }

  TEST_CASE("exact_law matches the Poisson conditional law") {
    const auto spec = AssemblySpec::ewens(2);
    const std::size_t n = 7;
    const auto rates = derive_rates(spec, n);
    std::vector<Rational> r(rates.exact_values().begin(), rates.exact_values().end());
    const auto level = enumerate_level(n);
    Rational total = 0;
    for (const auto& s : level) total += oracle::poisson_weight(r, s);
    for (const auto& s : level) CHECK(exact_law(spec, s) == oracle::poisson_weight(r, s) / total);
  }

  TEST_CASE("the conditional law does not depend on u") {
    const auto base = AssemblySpec::permutations();
    const auto scaled = base.with_u(Rational(7, 3));
    for (const auto& s : enumerate_level(6)) CHECK(exact_law(base, s) == exact_law(scaled, s));
  }

  TEST_CASE("weakly logarithmic check") {
    const auto perm = derive_rates(AssemblySpec::permutations(), 50);
    CHECK(check_weakly_logarithmic(perm, 1, 1).pass);
    const auto sets = derive_rates(AssemblySpec::set_partitions(), 10);
    const auto verdict = check_weakly_logarithmic(sets, Rational(1, 2), 2);
    CHECK_FALSE(verdict.pass);
    CHECK(verdict.index == 4);  // j lambda_j = 1/(j-1)! drops below 1/2 at j = 4
    CHECK(verdict.bound == WeaklyLogVerdict::Bound::lower);
  }

  TEST_CASE("explicit tables") {
    // m_j = (j-1)!, w_j = 1 reproduces permutations.
    std::vector<BigInt> m;
    for (std::size_t j = 1; j <= 8; ++j) m.push_back(oracle::factorial(j - 1));
    const auto spec = AssemblySpec::explicit_table("perm-table", m, std::vector<Rational>(8, 1));
    for (std::size_t n = 1; n <= 8; ++n) CHECK(total_count(spec, n) == Rational(oracle::factorial(n)));
    CHECK_THROWS_AS(derive_rates(spec, 9), BoundsError);
  }
}
