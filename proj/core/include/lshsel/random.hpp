#pragma once

#include <cstdint>
#include <random>

namespace lshsel {

/// Deterministic random stream. One stream per task; streams are never
/// shared between threads. Independent substreams are derived from a
/// (seed, index) pair so that parallel results do not depend on scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Stream number `index` of the family rooted at `seed`.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in [lower, upper).
  double uniform(double lower, double upper);

  std::uint64_t next_u64() { return engine_(); }

 private:
  struct Raw {};
  RandomStream(std::uint64_t state, Raw) : engine_(state) {}

  std::mt19937_64 engine_;
};

}  // namespace lshsel
