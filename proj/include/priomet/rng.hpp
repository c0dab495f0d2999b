// Seedable, splittable counter-style RNG. Every consumer derives an
// independent stream from (seed, label, indices...), so sampling decisions
// are reproducible regardless of evaluation order or thread count.
#pragma once

#include <cstdint>
#include <initializer_list>

namespace priomet {

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct SplitRng {
  std::uint64_t state;

  explicit SplitRng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() { return splitmix64(state); }

  /// Uniform in [0, bound) via 128-bit multiply; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform integer in [lo, hi] inclusive.
  long next_range(long lo, long hi) {
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

/// Derives a stream seed from a base seed and a tuple of labels/indices.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = seed;
  splitmix64(s);
  for (std::uint64_t p : parts) {
    s ^= p + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    splitmix64(s);
  }
  return s;
}

}  // namespace priomet
