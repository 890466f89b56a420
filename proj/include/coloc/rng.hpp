#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace coloc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Labeled sub-stream derivation: one master seed fans out to independent
/// per-stage (and per-trial) seeds, so adding a stage never perturbs the
/// streams of existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ fnv1a64(label)) + index);
}

/// Deterministic 64-bit random stream. mt19937_64 output is pinned by the
/// standard and the bounded draw below uses mask-and-reject, so a seeded
/// stream replays identically across platforms and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform draw on [0, bound). bound = 0 or 1 returns 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound < 2)
      return 0;
    const std::uint64_t mask = ~0ull >> std::countl_zero(bound - 1);
    for (;;) {
      const std::uint64_t r = next() & mask;
      if (r < bound)
        return r;
    }
  }

  /// Uniform double on [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased in-place Fisher-Yates shuffle. Fixed points are allowed; a
  /// one-element (or empty) vector consumes no draws.
  template <class T> void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 eng_;
};

} // namespace coloc
