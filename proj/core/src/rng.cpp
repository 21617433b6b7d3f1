#include "logasm/rng.hpp"

#include <cmath>

#include "logasm/errors.hpp"

namespace logasm {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

Rng Rng::stream(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t a = master;
  std::uint64_t b = index + 1;
  return Rng(splitmix64(a) ^ splitmix64(b));
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

namespace {

std::uint64_t poisson_inversion(Rng& rng, double lambda) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= lambda / static_cast<double>(k);
    if (p == 0.0) break;  // cdf saturated below u by rounding; u lies in the far tail
    cdf += p;
  }
  return k;
}

}  // namespace

std::uint64_t poisson(Rng& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("Poisson rate must be finite and nonnegative");
  }
  if (lambda == 0.0) return 0;
  constexpr double kPiece = 10.0;
  std::uint64_t total = 0;
  while (lambda > kPiece) {
    total += poisson_inversion(rng, kPiece);
    lambda -= kPiece;
  }
  return total + poisson_inversion(rng, lambda);
}

}  // namespace logasm
