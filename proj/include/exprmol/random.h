//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_RANDOM_H_
#define EXPRMOL_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace exprmol {

// Named RNG streams. Every stochastic step in the pipeline draws from its own
// stream, seeded by derive_seed(master, stream, index).
enum class Stream : std::uint64_t {
  kDataSplit = 1,
  kVaeInit = 2,
  kVaeShuffle = 3,
  kVaeDropout = 4,
  kVaeNoise = 5,
  kGenInit = 6,
  kGenShuffle = 7,
  kGenDropout = 8,
  kProbe = 9,
  kSample = 10,
  kSynthetic = 11,
};

// SplitMix64 finalizer. Constants from Steele, Lea & Flood (2014).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Order-dependent combination of a running hash with one more value.
constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Stream-splitting rule: seed = mix64(mix64(master ^ stream*phi) + index*phi),
// phi = 0x9e3779b97f4a7c15.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t index = 0) {
  constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;
  const std::uint64_t s = mix64(master ^ (static_cast<std::uint64_t>(stream) * kPhi));
  return mix64(s + (index + 1) * kPhi);
}

/// Deterministic random source. Uses std::mt19937_64 for raw bits; the
/// floating-point conversions are implemented here so that draws are
/// identical across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0): engine_(seed) { }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Standard normal via Box-Muller; consumes two uniforms per draw.
  double normal();
  // Uniform integer in [0, n).
  std::size_t below(std::size_t n);

  template <class T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace exprmol

#endif // EXPRMOL_RANDOM_H_
