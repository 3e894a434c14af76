#include "wavepwr/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavepwr {

CostEstimate cost_estimate(const std::vector<std::size_t>& params_per_subsystem,
                           const std::vector<std::vector<std::size_t>>& neighbors, std::size_t l, std::size_t l_s,
                           std::size_t l_c, std::size_t max_iterations) {
  if (neighbors.size() != params_per_subsystem.size()) throw std::invalid_argument("neighbor list length mismatch");
  const auto pow = [](std::size_t base, std::size_t e) { return std::pow(static_cast<double>(base), static_cast<double>(e)); };
  std::size_t p = 0;
  double own = 0.0;
  double coupled = 0.0;
  for (std::size_t i = 0; i < params_per_subsystem.size(); ++i) {
    p += params_per_subsystem[i];
    const double local = pow(l_s, params_per_subsystem[i]);
    own += local;
    double product = local;
    for (std::size_t j : neighbors[i]) {
      if (j >= params_per_subsystem.size()) throw std::out_of_range("neighbor index out of range");
      product *= pow(l_c, params_per_subsystem[j]);
    }
    coupled += product;
  }
  CostEstimate est;
  est.full_grid = pow(l, p);
  est.relaxation = 1.0 + own + static_cast<double>(max_iterations) * coupled;
  est.ratio = est.full_grid / est.relaxation;
  return est;
}

CostEstimate cost_estimate(const SubsystemDecomposition& decomposition, std::span<const std::size_t> random_params,
                           std::size_t l, std::size_t l_s, std::size_t l_c, std::size_t max_iterations) {
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::size_t>> neighbors;
  for (const auto& sub : decomposition.subsystems) {
    counts.push_back(static_cast<std::size_t>(std::count_if(sub.own_params.begin(), sub.own_params.end(), [&](std::size_t q) {
      return std::find(random_params.begin(), random_params.end(), q) != random_params.end();
    })));
    neighbors.push_back(sub.neighbors);
  }
  return cost_estimate(counts, neighbors, l, l_s, l_c, max_iterations);
}

}  // namespace wavepwr
