#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cooploc {

/// splitmix64 finalizer; used to spread structured seed material.
constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent named RNG stream from a base seed. Subsystems each
/// pull their own stream so enabling/disabling one never shifts another's draws.
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index = 0);

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64{seed}; }

/// One Gaussian draw. A fresh distribution per call keeps the draw count per
/// event fixed, so interleaving different sigmas cannot desynchronize a stream.
double gauss(std::mt19937_64& rng, double sigma);

/// One uniform draw in [0, 1).
double uniform01(std::mt19937_64& rng);

}  // namespace cooploc
