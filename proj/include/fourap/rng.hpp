#pragma once

#include <cstdint>
#include <random>

namespace fourap {

// Deterministic RNG wrapper. All sampling goes through the helpers below so
// that output streams depend only on the seed, never on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t uniform(uint64_t n) {
    // Rejection sampling to avoid modulo bias; deterministic for a fixed seed.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Uniform double in [0, 1).
  double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return uniform_real() < prob; }

  // Derives an independent stream from this seed and a stream id, without
  // advancing this engine. Used to give sub-tasks reproducible randomness
  // that does not depend on evaluation order.
  static uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fourap
