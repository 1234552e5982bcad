#pragma once

#include <cstdint>

namespace ilock {

/// Splitmix64. Used instead of <random> distributions so that seeded runs
/// produce identical streams on every platform/stdlib.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    // rejection sampling keeps the distribution exactly uniform
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return next() & 1; }

 private:
  uint64_t state_;
};

}  // namespace ilock
