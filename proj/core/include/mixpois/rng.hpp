#pragma once

#include <cstdint>
#include <random>

namespace mixpois {

using RandomEngine = std::mt19937_64;

/// SplitMix64 finalizer; the standard 64-bit avalanche mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Stream-splitting rule: the engine seed for logical stream (a, b) under a
/// master seed is obtained by folding each index into the state with the
/// golden-ratio increment and applying the SplitMix64 mix. Streams for
/// distinct (a, b) pairs are independent for all practical purposes, and the
/// rule is pure, so any worker layout reproduces the same draws.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = master_seed;
  s = mix64(s + 0x9E3779B97F4A7C15ULL * (a + 1));
  s = mix64(s + 0x9E3779B97F4A7C15ULL * (b + 1));
  return s;
}

inline RandomEngine make_stream(std::uint64_t master_seed, std::uint64_t a,
                                std::uint64_t b = 0) {
  return RandomEngine(derive_stream_seed(master_seed, a, b));
}

/// Uniform draw in the open interval (0, 1) with 53-bit resolution.
inline double uniform_unit(RandomEngine& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace mixpois
