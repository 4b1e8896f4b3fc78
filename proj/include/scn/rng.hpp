#pragma once

#include <cstdint>
#include <initializer_list>

namespace scn {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hashes a derivation path (e.g. seed, node index, lambda index, trial) into
/// a 64-bit stream key. Different paths give statistically independent keys.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p + 0x632be59bd9b4e019ULL));
  return key;
}

/// Counter-based draws from a derivation key: identical key, identical
/// sequence, independent of which thread or in what order it is consumed.
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t key) : state_(key) {}
  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : state_(derive_key(seed, path)) {}

  constexpr std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform on [-lambda, lambda].
  constexpr double symmetric(double lambda) { return lambda * (2.0 * uniform01() - 1.0); }

 private:
  std::uint64_t state_;
};

}  // namespace scn
