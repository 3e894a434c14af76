#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/quadrature.hpp"

namespace wavepwr {

/// Unscrambled Sobol low-discrepancy sequence (gray-code construction).
class SobolSequence {
 public:
  explicit SobolSequence(std::size_t dims);

  static std::size_t max_dims();
  std::size_t dims() const { return dims_; }

  /// Point i in [0,1)^dims. The origin is skipped, so i = 0 is the first
  /// nonzero point. Random access via the gray code of i + 1.
  void point(std::uint64_t i, std::span<double> out) const;

 private:
  static constexpr unsigned kBits = 32;
  std::size_t dims_;
  std::vector<std::uint32_t> v_;  // dims x kBits direction numbers
};

enum class SamplerKind { kPseudo, kSobol };

SamplerKind parse_sampler(std::string_view name);
std::string to_string(SamplerKind kind);

/// Draws full model parameter vectors: nominal values with the random
/// entries replaced by transformed uniform draws. Sample s is a pure
/// function of (seed, s), so any partition of the work gives the same set.
class ParameterSampler {
 public:
  ParameterSampler(std::vector<RandomParam> params, Vector nominal, SamplerKind kind, std::uint64_t seed);

  void sample(std::uint64_t s, std::span<double> out) const;
  std::size_t param_dim() const { return static_cast<std::size_t>(nominal_.size()); }

 private:
  std::vector<RandomParam> params_;
  Vector nominal_;
  SamplerKind kind_;
  std::uint64_t key_;
  std::vector<SobolSequence> sobol_;
};

}  // namespace wavepwr
