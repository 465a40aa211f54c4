#pragma once

#include <cmath>
#include <cstdint>

namespace gcpv {

/// Seedable, splittable random stream.
///
/// All stochastic operations in the library take an explicit Rng; there is no
/// global generator. Distribution transforms are implemented here rather than
/// with <random> adaptors so that a (seed, platform) pair always produces the
/// same byte-identical stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_seed_(seed) {
    // splitmix64 expansion of the seed into the xoshiro256** state.
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  /// Next raw 64-bit value (xoshiro256**).
  std::uint64_t next_u64() {
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

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double strictly inside (0, 1); log() of it is finite and negative.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Multiply-shift; bias is negligible for n << 2^64.
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  /// Standard normal via Box-Muller. Consumes two uniforms per call; no
  /// cached spare, so the draw sequence is a pure function of call count.
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Independent child stream derived from the root seed and a stream index.
  /// Children are stable: they do not depend on how much the parent has drawn.
  Rng split(std::uint64_t stream) const {
    std::uint64_t x = root_seed_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    return Rng(splitmix64(x));
  }

  std::uint64_t root_seed() const { return root_seed_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t root_seed_;
  std::uint64_t state_[4];
};

}  // namespace gcpv
