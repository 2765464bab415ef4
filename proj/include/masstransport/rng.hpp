#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mtp {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic child seed for a labelled sub-experiment.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
  return mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ mix64(a + 0xbb67ae8584caa73bULL) ^
               (mix64(b + 0x3c6ef372fe94f82bULL) << 1));
}

/// Stream ids used by the process samplers.
enum class Stream : std::uint64_t { Component = 1, State = 2, Draw = 3, Phase = 4 };

/// Counter-based generator: every variate is a pure function of
/// (seed, trial, stream, index), so draws can be taken in any order and on
/// any thread.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial) noexcept
      : key_(mix64(mix64(seed) ^ (trial * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

  std::uint64_t bits(Stream stream, std::int64_t index) const noexcept {
    const auto s = static_cast<std::uint64_t>(stream);
    return mix64(key_ ^ mix64(static_cast<std::uint64_t>(index) ^ (s << 58) ^ (s * 0x9fb21c651e98df25ULL)));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(Stream stream, std::int64_t index) const noexcept {
    return static_cast<double>(bits(stream, index) >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on two sub-counters of `index`.
  double normal(Stream stream, std::int64_t index) const noexcept {
    const double u1 = 1.0 - uniform(stream, 2 * index);      // (0, 1]
    const double u2 = uniform(stream, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace mtp
