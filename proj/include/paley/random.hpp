#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "paley/error.hpp"

namespace paley {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Seed for trial t of a run with the given master seed. Depends only on (master, t), so
/// trials can be evaluated in any order or in parallel.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t) {
  return splitmix64_mix(master ^ splitmix64_mix((t + 1) * kGoldenGamma));
}

/// xoshiro256** 1.0 (Blackman, Vigna), state filled from SplitMix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) {
      x += kGoldenGamma;
      s = splitmix64_mix(x);
    }
  }

  /// Raw state, for reproducing published reference streams.
  static Xoshiro256 from_state(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3) {
    Xoshiro256 g(0);
    g.state_[0] = s0;
    g.state_[1] = s1;
    g.state_[2] = s2;
    g.state_[3] = s3;
    return g;
  }

  std::uint64_t next() {
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

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= limit) return r % bound;
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4]{};
};

/// First k entries of a seeded Fisher–Yates shuffle of {0, …, n−1}; order is the draw order.
inline std::vector<std::int64_t> random_subset(std::uint64_t n, std::uint64_t k, std::uint64_t seed) {
  if (k > n) fail(ErrorCode::ParameterRange, "subset larger than ground set");
  std::vector<std::int64_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  Xoshiro256 rng(seed);
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace paley
