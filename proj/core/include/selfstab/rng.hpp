#pragma once

#include <cmath>
#include <cstdint>

namespace selfstab {

// SplitMix64 is the pinned generator used for all stochastic output.  It is
// counter-based (the k-th output is a pure function of state0 + k*gamma), so
// substreams derived from (seed, stream) pairs can be handed to parallel
// workers without coordination and results are reproducible across platforms.

/// Stateless 64-bit finalizer (Stafford variant 13).
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives the initial state of substream `stream` of a given seed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(substream_seed(seed, stream)) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1].
  double uniform01_open_low() noexcept { return 1.0 - uniform01(); }

  /// Uniform on the open interval (lo,hi).
  double uniform_open(double lo, double hi) noexcept {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return lo + u * (hi - lo);
  }

  double exponential(double rate) noexcept {
    return -std::log(uniform01_open_low()) / rate;
  }

  /// Fair sign, +1 or -1.
  double sign() noexcept { return (next() & 1) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

/// Name recorded in manifests so runs declare which generator produced them.
inline constexpr const char* kRngName = "splitmix64";

}  // namespace selfstab
