#ifndef CRU_RNG_HPP
#define CRU_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cru {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent deterministic stream for a (seed, path) pair. Per-sample work
// derives its stream solely from the corpus seed and the sample index, so any
// worker partitioning produces identical output.
inline std::mt19937_64 rng_for(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = splitmix64(seed);
  for (std::uint64_t p : path) state = splitmix64(state ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return std::mt19937_64(state);
}

// Stream tags used to keep the augmentation stages decoupled.
enum : std::uint64_t {
  kStreamSynthesize = 1,
  kStreamVariant = 2,
  kStreamSurveillance = 3,
  kStreamNoise = 4,
  kStreamSweep = 5,
  kStreamDonor = 6,
};

}  // namespace cru

#endif  // CRU_RNG_HPP
