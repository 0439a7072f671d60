#pragma once

#include <cmath>
#include <cstdint>

namespace ksw {

/// Counter-based random numbers: a stateless hash of (seed, stream index).
/// Sample i of a run is a pure function of (seed, i), so results do not
/// depend on how work is partitioned across threads or runs.

inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index));
}

/// Uniform draw in the open interval (0, 1).
inline double uniform01(uint64_t seed, uint64_t index) {
  return (static_cast<double>(counter_hash(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw (Box-Muller, consumes streams 2i and 2i+1).
inline double normal01(uint64_t seed, uint64_t index) {
  const double u1 = uniform01(seed, 2 * index);
  const double u2 = uniform01(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace ksw
