#ifndef RUNPAT_RNG_HPP
#define RUNPAT_RNG_HPP

#include <cstdint>
#include <random>

namespace runpat {

// splitmix64 step; used to derive independent streams from (seed, index)
// pairs so that results do not depend on scheduling or worker count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream for replication `index` of the experiment identified by `seed`.
// `salt` separates independent uses inside one replication (path draw vs.
// randomized decision draw).
inline std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t index,
                                          std::uint64_t salt = 0) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(index ^ splitmix64(salt)));
  return std::mt19937_64(s);
}

inline double uniform01(std::mt19937_64& gen) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

}  // namespace runpat

#endif  // RUNPAT_RNG_HPP
