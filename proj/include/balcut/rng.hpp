#pragma once

#include <cstdint>
#include <initializer_list>

namespace balcut {

// Counter-based randomness: every draw is a pure function of (seed, key...),
// so results do not depend on iteration or thread order.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_key(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = mix64(seed ^ 0x5bd1e9955bd1e995ULL);
  for (std::uint64_t k : key) h = mix64(h ^ mix64(k));
  return h;
}

// Uniform in [0, 1) with 53 random bits.
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double keyed_uniform(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  return unit_from_bits(hash_key(seed, key));
}

// Uniform integer in [0, bound). Multiply-shift; bias is below 2^-32 for the
// bounds used here.
inline std::uint64_t keyed_below(std::uint64_t seed, std::initializer_list<std::uint64_t> key,
                                 std::uint64_t bound) {
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(hash_key(seed, key)) * static_cast<unsigned __int128>(bound);
  return static_cast<std::uint64_t>(prod >> 64);
}

// Per-trial seed derivation for Monte Carlo loops.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return hash_key(seed, {0xd1b54a32d192ed03ULL, index});
}

}  // namespace balcut
