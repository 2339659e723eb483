#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace physnn {

namespace detail {

// SplitMix64 finalizer. Statistically solid for Monte-Carlo work and,
// unlike engine state, random-access: output depends only on (key, counter).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based deterministic generator: every draw is a pure function of
/// (seed, stream, counter), so identical seeds give bitwise identical
/// sequences and independent streams can be derived without shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::mix64(detail::mix64(seed) ^ (stream * 0xD1B54A32D192ED03ull))) {}

  std::uint64_t next_u64() { return detail::mix64(key_ ^ detail::mix64(counter_++)); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; consumes exactly two counters per draw.
  double normal() {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Derives a child seed for a named sub-task (per-variant init, data noise,
/// Monte-Carlo blocks) so distinct roles never share a stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a over the tag
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return detail::mix64(detail::mix64(seed) ^ h);
}

}  // namespace physnn
