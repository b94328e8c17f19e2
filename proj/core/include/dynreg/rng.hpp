#pragma once

#include <cstdint>

namespace dynreg {

/// splitmix64 finalizer; the basis of all randomness in the library.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based draw: a pure function of (seed, a, b), so games are replayable
/// and Monte-Carlo workers can draw in any order without shared state.
inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(seed ^ splitmix64(a * 0x9e3779b97f4a7c15ULL + b + 0x1000000001b3ULL));
}

/// +1.0 or -1.0, equiprobable; t and i index the round and the coordinate.
inline double rademacher_sign(std::uint64_t seed, int t, int i) {
  return (counter_draw(seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)) & 1ULL)
             ? 1.0
             : -1.0;
}

/// Uniform draw in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return static_cast<double>(counter_draw(seed, a, b) >> 11) * 0x1.0p-53;
}

/// Decorrelates a experiment-level base seed into per-replication seeds.
inline std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x632be59bd9b4e019ULL * (index + 1));
}

}  // namespace dynreg
