// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace specsense {

/// Mixes a master seed with a tag (trial index, purpose id, ...) into an
/// independent stream seed. Index-based, so extending a run keeps earlier
/// streams unchanged.
inline std::uint64_t seed_derive(std::uint64_t master, std::uint64_t tag) {
  // splitmix64 finalizer over the combined state
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded sampler with portable transforms (uniforms from raw bits,
/// normals via Box-Muller) so identical seeds give identical draws
/// independent of the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed_derive(seed, 0)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Two independent standard normals from one Box-Muller pair.
  std::pair<double, double> normal_pair() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  double normal() { return normal_pair().first; }

  /// Uniform integer on [lo, hi], inclusive. Rejection sampling, unbiased.
  std::uint64_t uniform_index(std::uint64_t range) {
    // returns value in [0, range)
    std::uint64_t threshold = (0 - range) % range;
    for (;;) {
      std::uint64_t x = next_u64();
      if (x >= threshold) return x % range;
    }
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(
                    static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace specsense
