#pragma once

#include <random>

#include "tracefn/common.hpp"

namespace tracefn {

/// Default seed for every randomized run.
inline constexpr u64 kDefaultSeed = 0x5EEDF00DULL;

// The standard distributions are implementation-defined, so draws are made
// by hand from the raw mt19937_64 stream to stay identical across toolchains.

/// Uniform integer in [0, n), n >= 1, by rejection.
inline u64 uniform_below(std::mt19937_64& rng, u64 n) {
  const u64 limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  u64 x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tracefn
