#pragma once

#include <array>
#include <cstdint>

namespace logasm {

// xoshiro256** (Blackman & Vigna) seeded through SplitMix64. Both algorithms
// are fixed-width integer arithmetic, so a (seed, stream) pair produces the
// same sequence on every platform. Stream k of master seed s is seeded from
// splitmix64(s) xor splitmix64(k + 1) fed through SplitMix64 again; distinct
// streams are statistically independent for all practical purposes.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept;

  // Independent stream for replica `index` of a run seeded with `master`.
  static Rng stream(std::uint64_t master, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return next(); }
  result_type next() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> state_{};
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Poisson variate by inversion with sequential search. Rates above 10 are
// split into pieces of at most 10 and summed, which keeps the method exact
// (given exact uniforms) without underflowing exp(-lambda).
std::uint64_t poisson(Rng& rng, double lambda);

}  // namespace logasm
