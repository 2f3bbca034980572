#pragma once

#include <cstdint>

namespace imdiff::rng {

// splitmix64; used both as a hash and to seed mt19937_64 streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x9e3779b97f4a7c15ull));
}

// uniform in [0,1) from 64 random bits
inline double u01(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// Seed of Monte Carlo sample i under a master seed. Parallel workers use
// disjoint streams, so results do not depend on scheduling.
inline std::uint64_t substream(std::uint64_t master, std::uint64_t i) { return mix(master, i); }

// Deterministic coin for edge e within one run. The whole live graph of a run
// is a pure function of run_seed, so lazy simulation and materialized
// live-graph sampling see identical worlds.
inline double edge_coin(std::uint64_t run_seed, std::uint64_t edge_index) {
  return u01(mix(run_seed, edge_index));
}

}  // namespace imdiff::rng
