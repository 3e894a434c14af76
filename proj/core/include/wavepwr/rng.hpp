#pragma once

#include <cstdint>
#include <string_view>

namespace wavepwr {

/// SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for a named stream: splitmix64(seed ^ fnv1a64(tag)).
///
/// Every stochastic stage of a run draws from its own tagged stream, so
/// adding a stage or changing thread counts never perturbs another stage.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

/// Element `counter` of the SplitMix64 stream keyed by `key`, mapped to
/// the open interval (0, 1). Pure function of its arguments.
double counter_uniform(std::uint64_t key, std::uint64_t counter);

/// Sequential SplitMix64 generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    const std::uint64_t out = splitmix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace wavepwr
