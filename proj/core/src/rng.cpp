#include "wavepwr/rng.hpp"

namespace wavepwr {
namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) { return splitmix64(seed ^ fnv1a64(tag)); }

double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(key + counter * 0x9E3779B97F4A7C15ULL);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace wavepwr
