#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qtlens {

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive stable hash accumulator. Strings are folded with FNV-1a
/// before mixing so the result does not depend on std::hash.
class StableHash {
 public:
  explicit StableHash(std::uint64_t seed) : state_(mix64(seed)) {}

  StableHash& add(std::uint64_t v) {
    state_ = mix64(state_ ^ mix64(v));
    return *this;
  }
  StableHash& add(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return add(h);
  }
  [[nodiscard]] std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Sub-seed for sample `index` of a stream seeded by `seed`
/// (mix64(seed xor index)).
[[nodiscard]] constexpr std::uint64_t sample_seed(std::uint64_t seed,
                                                  std::uint64_t index) {
  return mix64(seed ^ index);
}

/// mt19937_64 with portable real/int draws (the std distributions are
/// implementation-defined, which would break cross-platform replay).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qtlens
