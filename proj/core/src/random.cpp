#include "lshsel/random.hpp"

namespace lshsel {

namespace {

// splitmix64 finalizer; decorrelates nearby seeds before they reach the engine.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Keeps substreams disjoint from RandomStream(seed).
constexpr std::uint64_t kSubstreamTag = 0x5ca1ab1e0ddba11ULL;

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(mix(seed) ^ mix(index ^ kSubstreamTag), Raw{});
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lower, double upper) {
  const double x = lower + (upper - lower) * uniform();
  return x < upper ? x : lower;
}

}  // namespace lshsel
