#pragma once

#include <cstdint>

namespace ff {

// SplitMix64 generator. Chosen over <random> engines because its output is
// bit-stable across platforms and standard libraries, so recorded seeds and
// search transcripts replay exactly anywhere.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n >= 1. Rejection keeps the distribution exact.
  uint64_t below(uint64_t n) {
    uint64_t x, r;
    do {
      x = next();
      r = x % n;
    } while (x - r > uint64_t(0) - n);
    return r;
  }

  // Independent stream for parallel work.
  Rng split() { return Rng(next() ^ 0x5851f42d4c957f2dULL); }

private:
  uint64_t state_;
};

} // namespace ff
