#pragma once

#include <cstdint>
#include <random>

namespace vqnn {

// Seeded random stream with platform-independent output.
//
// The engine is std::mt19937_64, whose bit stream is fixed by the C++
// standard. The distributions are implemented here rather than taken from
// <random> because the standard leaves distribution algorithms
// implementation-defined; a given seed must produce the same samples on
// every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer in [0, n) by rejection sampling.
  std::uint64_t uniform_int(std::uint64_t n);

  // Box-Muller transform; consumes exactly two uniforms per call.
  double gaussian(double mean, double stddev);

  // Derives a child seed, e.g. one stream per run in a batch.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used for seed derivation and hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace vqnn
