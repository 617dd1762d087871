#pragma once

#include <cstdint>
#include <random>

namespace witten {

// splitmix64, used to derive independent per-chain RNG streams from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream `idx` of a master seed. Chains that must be coupled (e.g. the
// x-replica of RELD against a plain ULA chain) share a stream index.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t idx) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(idx + 1)));
}

}  // namespace witten
