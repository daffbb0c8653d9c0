#pragma once

#include <cstdint>

namespace dominet {

// SplitMix64 (Steele, Lea & Flood; Vigna's fixed-increment variant).
// 64-bit state, stable across platforms, good enough statistics for
// Monte Carlo sampling at desk scale.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

private:
  std::uint64_t state_;
};

// Counter-based substream seed: stream k is independent of how many draws
// any other stream made, so parallel consumers cannot perturb each other.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline SplitMix64 substream(std::uint64_t master_seed, std::uint64_t index) {
  return SplitMix64(derive_seed(master_seed, index));
}

}  // namespace dominet
