#include "cooploc/rng.hpp"

namespace cooploc {

namespace {

constexpr uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index) {
  uint64_t h = splitmix64(base ^ fnv1a(tag));
  return splitmix64(h ^ (0x632be59bd9b4e019ULL * (index + 1)));
}

double gauss(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) {
    return 0.0;
  }
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

double uniform01(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

}  // namespace cooploc
