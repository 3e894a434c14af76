#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavepwr/dynet.hpp"
#include "wavepwr/polychaos.hpp"
#include "wavepwr/quadrature.hpp"

namespace wavepwr {

struct PwrOptions {
  std::size_t l_s = 5;   // nodes per own parameter
  std::size_t l_c = 2;   // nodes per coupling parameter
  int total_order = 5;   // P
  std::size_t max_iterations = 10;
  double tol = 1e-6;
  double t0 = 0.0;
  double horizon = 1.0;
  double dt = 0.01;

  void validate() const;
};

struct PwrReport {
  std::size_t iterations = 0;
  bool converged = false;
  /// metric_history[k] compares iteration k + 2 with iteration k + 1.
  std::vector<double> metric_history;
  std::vector<double> times;
  std::vector<GpcWaveform> waveforms;  // one per subsystem
  std::vector<std::size_t> owner;      // state -> subsystem
  std::size_t deterministic_runs = 0;

  Vector mean(std::size_t state) const;
  Vector variance(std::size_t state) const;
  /// Surrogate state trajectories at a full parameter vector, n x times.size().
  Matrix evaluate(std::span<const double> params) const;
};

/// Non-intrusive probabilistic waveform relaxation.
PwrReport pwr_solve(const NetworkModel& model, const SubsystemDecomposition& decomposition,
                    const std::vector<RandomParam>& params, const PwrOptions& options);

/// Stochastic collocation on the undecomposed model over the full tensor grid.
struct PcmResult {
  std::vector<double> times;
  PolyBasis basis;
  std::vector<Matrix> coefficients;  // per state: basis.size() x times.size()
  std::size_t runs = 0;

  Vector mean(std::size_t state) const;
  Vector variance(std::size_t state) const;
};

PcmResult pcm_full_grid(const NetworkModel& model, const std::vector<RandomParam>& params, std::size_t level,
                        int total_order, double t0, double horizon, double dt);

}  // namespace wavepwr
