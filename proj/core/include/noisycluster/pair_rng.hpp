#pragma once

#include <cstdint>

namespace noisycluster {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Counter-based keyed hash of (seed, lo, hi) mapped to [0,1).
// Answers derived from it are lazy, order-independent and reproducible
// without materializing an n x n matrix.
inline double pair_uniform(std::uint64_t seed, int u, int v) {
  const std::uint64_t lo = static_cast<std::uint64_t>(u < v ? u : v);
  const std::uint64_t hi = static_cast<std::uint64_t>(u < v ? v : u);
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (lo * 0xff51afd7ed558ccdULL));
  h = mix64(h ^ (hi * 0xc4ceb9fe1a85ec53ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Splittable seed derivation: derive_seed(base, a, b) never collides in
// practice and adding streams does not perturb earlier ones.
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                           std::uint64_t b = 0) {
  return mix64(base ^ mix64(a + 0x9e3779b97f4a7c15ULL) ^
               mix64(b * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
}

// Small sequential generator for seeded shuffles and subsampling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound > 0. Rejection-free Lemire reduction is not
  // needed at our scales; modulo bias is < 2^-32 for bound < 2^32.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace noisycluster
