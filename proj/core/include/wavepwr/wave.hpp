#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/partition.hpp"

namespace wavepwr {

struct WaveConfig {
  double c = 1.0;             // wave speed, 0 < c <= sqrt(2)
  std::size_t t_max = 0;      // number of steps; 0 selects it from a coarse pre-run
  std::size_t k = 1;          // modes to extract, constant mode excluded
  double eta = 8.0;           // cycles of the lowest frequency needed to resolve it
  std::uint64_t seed = 0;     // drives u(0)
  double blowup_factor = 1e6; // |u| beyond this multiple of max|u(0)| counts as unstable

  /// Full invariants, including the stability bound c <= sqrt(2).
  void validate() const;
  /// Everything except the stability bound; wave_run accepts c > sqrt(2)
  /// and reports the divergence as InstabilityError.
  void validate_simulation() const;
};

/// Node values u_i(t) for t = 1..t_max.
struct WaveTrace {
  Matrix series;   // t_max x n; row t-1 holds u(t)
  Vector initial;  // u(0) = u(-1)
  WaveConfig config;

  std::size_t steps() const { return static_cast<std::size_t>(series.rows()); }
  std::size_t nodes() const { return static_cast<std::size_t>(series.cols()); }
};

/// Per-mode frequency, implied eigenvalue and per-node signed amplitude.
struct ModeEstimate {
  std::vector<double> theta;   // radians per step, strictly increasing
  std::vector<double> lambda;  // 2 (1 - cos theta) / c^2
  Matrix amplitude;            // n x k
};

struct WaveClusterResult {
  ClusterAssignment assignment;
  ModeEstimate modes;
  std::size_t t_max = 0;
  std::size_t components = 1;
};

/// u(t) = 2u(t-1) - u(t-2) - c^2 L u(t-1) from u(-1) = u(0) ~ U[0,1] (seeded).
/// Throws InstabilityError on a non-finite value or growth past blowup_factor.
WaveTrace wave_run(const NormalizedLaplacian& laplacian, const WaveConfig& config);

/// Same recurrence from a caller-supplied u(0).
WaveTrace wave_run(const NormalizedLaplacian& laplacian, const WaveConfig& config,
                   const Vector& initial);

/// The bare recurrence with no validation of c; for analysis and tests.
WaveTrace wave_iterate(const NormalizedLaplacian& laplacian, double c, std::size_t t_max,
                       const Vector& initial, double blowup_factor = 1e6);

/// Seeded initial condition used by wave_run.
Vector wave_initial_state(std::size_t n, std::uint64_t seed);

/// Frequencies of the k lowest non-DC spectral peaks shared by all nodes,
/// and each node's signed amplitude at those frequencies.
ModeEstimate extract_modes(const WaveTrace& trace, std::size_t k);

/// Hann-windowed magnitude spectrum of every node, (t_max/2 + 1) x n.
Matrix magnitude_spectra(const WaveTrace& trace);

/// wave_run -> extract_modes -> sign_cluster.
ClusterAssignment cluster_by_wave(const NormalizedLaplacian& laplacian, const WaveConfig& config);
WaveClusterResult cluster_by_wave_detailed(const NormalizedLaplacian& laplacian,
                                           const WaveConfig& config);

/// ceil(eta * 2 pi / arccos(exp(-1/tau))) + n.
std::size_t estimate_convergence_time(double tau, std::size_t n, double eta);

/// cos(theta) = 1 - c^2 lambda / 2.
double theta_from_lambda(double lambda, double c);
double lambda_from_theta(double theta, double c);

}  // namespace wavepwr
