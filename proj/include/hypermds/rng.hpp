#pragma once

#include <cstdint>

namespace hypermds {

/// Small deterministic generator (xorshift-multiply mixing). Used instead
/// of <random> distributions so that streams are reproducible byte for byte
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Independent substream for replicate/run index i under a base seed.
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t i) {
    Rng r(seed ^ (0xD1B54A32D192ED03ULL * (i + 1)));
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace hypermds
