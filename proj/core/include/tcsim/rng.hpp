#pragma once

#include <cmath>
#include <cstdint>

namespace tcsim {

/// Deterministic noise stream (splitmix64 + Box-Muller). Self-contained so
/// that traces are bit-reproducible independent of the standard library's
/// distribution implementations.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in (0, 1].
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal draw. Uses two uniforms per call; no spare is cached so
  /// consumption per call is fixed.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed for a tagged consumer of a master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t tag) {
  NoiseStream mix(seed ^ (tag * 0xD6E8FEB86659FD93ULL));
  mix.next_u64();
  return mix.next_u64();
}

}  // namespace tcsim
