#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavepwr/dynet.hpp"

namespace wavepwr {

/// Deterministic-run counts of full-grid collocation (R_F) and PWR (R_I).
struct CostEstimate {
  double full_grid = 0.0;   // l^p
  double relaxation = 0.0;  // 1 + sum l_s^p_i + I_max sum l_s^p_i prod_{j in N(i)} l_c^p_j
  double ratio = 0.0;       // full_grid / relaxation
};

/// params_per_subsystem[i] = p_i, neighbors[i] = adjacent subsystems.
CostEstimate cost_estimate(const std::vector<std::size_t>& params_per_subsystem,
                           const std::vector<std::vector<std::size_t>>& neighbors, std::size_t l, std::size_t l_s,
                           std::size_t l_c, std::size_t max_iterations);

/// p_i counts the random parameters owned by subsystem i.
CostEstimate cost_estimate(const SubsystemDecomposition& decomposition, std::span<const std::size_t> random_params,
                           std::size_t l, std::size_t l_s, std::size_t l_c, std::size_t max_iterations);

}  // namespace wavepwr
