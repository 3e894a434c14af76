#include <algorithm>
#include <stdexcept>

#include "wavepwr/rng.hpp"
#include "wavepwr/sampling.hpp"

namespace wavepwr {

SamplerKind parse_sampler(std::string_view name) {
  if (name == "pseudo") return SamplerKind::kPseudo;
  if (name == "sobol") return SamplerKind::kSobol;
  throw std::invalid_argument("unknown sampler '" + std::string(name) + "' (expected pseudo or sobol)");
}

std::string to_string(SamplerKind kind) { return kind == SamplerKind::kSobol ? "sobol" : "pseudo"; }

ParameterSampler::ParameterSampler(std::vector<RandomParam> params, Vector nominal, SamplerKind kind,
                                   std::uint64_t seed)
    : params_(std::move(params)), nominal_(std::move(nominal)), kind_(kind), key_(derive_seed(seed, "mc-sampler")) {
  for (const auto& p : params_) {
    if (p.index >= static_cast<std::size_t>(nominal_.size())) throw std::out_of_range("random parameter index out of range");
    p.dist.validate();
  }
  if (kind_ == SamplerKind::kSobol && !params_.empty()) {
    if (params_.size() > SobolSequence::max_dims()) {
      throw std::invalid_argument("too many random parameters for the Sobol table");
    }
    sobol_.emplace_back(params_.size());
  }
}

void ParameterSampler::sample(std::uint64_t s, std::span<double> out) const {
  if (out.size() != param_dim()) throw std::invalid_argument("sample output has wrong length");
  std::copy(nominal_.data(), nominal_.data() + nominal_.size(), out.begin());
  if (params_.empty()) return;
  std::vector<double> u(params_.size());
  if (kind_ == SamplerKind::kSobol) {
    sobol_.front().point(s, u);
    for (double& x : u) x = std::clamp(x, 0x1.0p-33, 1.0 - 0x1.0p-33);
  } else {
    for (std::size_t d = 0; d < params_.size(); ++d) u[d] = counter_uniform(key_ + d * 0xD1B54A32D192ED03ULL, s);
  }
  for (std::size_t d = 0; d < params_.size(); ++d) out[params_[d].index] = params_[d].dist.from_unit(u[d]);
}

}  // namespace wavepwr
