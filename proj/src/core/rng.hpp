#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace csaudio {

// SplitMix64 (Steele/Lea/Vigna). Used instead of <random> engines plus
// distributions because distribution output is implementation-defined;
// this stream is bit-identical on every platform, which keeps seeded
// sampling patterns and synthetic signals reproducible everywhere.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform sign.
  double next_sign() { return (next() & 1u) ? 1.0 : -1.0; }

private:
  std::uint64_t state_;
};

// First m entries of a Fisher-Yates shuffle of [0, n). Only the first m
// swap steps are performed; they produce exactly the same prefix as a
// full pass, since later steps never touch positions < m.
inline std::vector<std::uint32_t> shuffled_prefix(std::size_t n, std::size_t m, SplitMix64& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = 0; i < m && i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(m);
  return perm;
}

inline std::vector<std::uint32_t> shuffled_prefix(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return shuffled_prefix(n, m, rng);
}

}  // namespace csaudio
