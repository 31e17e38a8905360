#pragma once

#include <cstdint>

namespace hyperdiam {

/// Stateless 64-bit avalanche (murmur3 fmix64). Bijective.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

/// SplitMix64 stream; used for seeding the main generator.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ generator. Fully deterministic given the seed, independent of
/// platform library implementations, which is what makes trial streams
/// reproducible across runs and worker counts.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_unit() noexcept { return (next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1); never returns an exact endpoint.
  double next_unit_open() noexcept {
    return ((next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound > 0. Debiased by rejection.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

/// Threshold for the "next() < threshold" Bernoulli(p) test. Caller must
/// handle p <= 0 (never) and p >= 1 (always) separately.
inline std::uint64_t bernoulli_threshold(double p) noexcept {
  return static_cast<std::uint64_t>(
      static_cast<long double>(p) * 18446744073709551616.0L);
}

}  // namespace hyperdiam
