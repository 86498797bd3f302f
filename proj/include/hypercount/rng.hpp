#ifndef HYPERCOUNT_RNG_HPP
#define HYPERCOUNT_RNG_HPP

#include <cstdint>

namespace hypercount {

// Counter-based uniform stream: every variate is a pure function of
// (seed, replication, counter), so replications can be farmed out to any
// number of workers and still reproduce bit-identical results.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t rep,
                                  std::uint64_t counter) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ rep);
  h = mix64(h ^ counter);
  return h;
}

// Uniform in [0, 1) with 53 random bits.
inline double u01(std::uint64_t seed, std::uint64_t rep, std::uint64_t counter) {
  return static_cast<double>(counter_hash(seed, rep, counter) >> 11) * 0x1.0p-53;
}

}  // namespace hypercount

#endif
