#pragma once

#include <cstdint>

#include "resistnet/graph.hpp"

namespace resistnet {

/// SplitMix64 stream. Fixed so that seeded runs are reproducible bit-for-bit
/// across platforms and implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline constexpr int kRggMaxAttempts = 100;

/// Random geometric graph: n points uniform in [0, side]^2 (x then y, node
/// order), an edge (i < j, lexicographic order) iff distance <= radius, weight
/// 1/distance. Redraws from the same stream until connected; throws
/// GenerationError after kRggMaxAttempts.
WeightedGraph generate_rgg(Index n, double radius, std::uint64_t seed, double side = 1.0);

}  // namespace resistnet
