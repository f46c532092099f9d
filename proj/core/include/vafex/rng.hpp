#pragma once

#include <cstdint>
#include <random>

namespace vafex {

// splitmix64 finalizer; used to derive independent stream seeds from a root
// seed so that episode k is reproducible regardless of worker layout.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return mix_seed(root ^ mix_seed(stream + 1));
}

// Uniform double in [0, 1). std::uniform_real_distribution is
// implementation-defined, so outputs would not be stable across standard
// libraries; this is.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace vafex
