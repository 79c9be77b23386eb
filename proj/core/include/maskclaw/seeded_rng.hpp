#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace maskclaw {

// Seeded draws used everywhere determinism matters. std::mt19937_64 has a
// pinned sequence; the helpers below avoid std distributions, whose output
// is not pinned across standard libraries, so frozen fixtures stay stable.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

inline std::uint64_t rng_below(std::mt19937_64& g, std::uint64_t n) {
  return n == 0 ? 0 : g() % n;  // modulo bias is fine at these scales
}

inline int rng_range(std::mt19937_64& g, int lo, int hi) {  // inclusive
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline double rng_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool rng_chance(std::mt19937_64& g, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return rng_unit(g) < p;
}

template <typename T>
void rng_shuffle(std::mt19937_64& g, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace maskclaw
