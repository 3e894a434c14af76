#pragma once

#include <cstddef>
#include <vector>

#include "wavepwr/dynet.hpp"
#include "wavepwr/partition.hpp"
#include "wavepwr/spectrum.hpp"

namespace wavepwr {

/// Spectral partition of a similarity graph that may be disconnected.
struct SpectralPartition {
  std::vector<double> eigenvalues;  // ascending, all components merged
  std::size_t gap_index = 1;
  double gap_ratio = 0.0;
  std::size_t components = 0;
  std::size_t zero_multiplicity = 0;  // eigenvalues below 1e-9
  std::vector<std::vector<std::size_t>> clusters;  // sorted by smallest member
  ClusterAssignment assignment;
};

/// Cluster count is max(gap index, component count). Components seed the
/// clusters; further clusters come from repeatedly bisecting the cluster
/// with the smallest Fiedler value by the sign of its Fiedler vector.
SpectralPartition spectral_partition(const Matrix& weights, GapMode mode = GapMode::kAbsolute);

struct DecomposeOptions {
  double t0 = 0.0;
  double horizon = 10.0;
  double dt = 0.01;
  GapMode gap_mode = GapMode::kAbsolute;
};

struct NetworkDecomposition {
  Matrix jacobian;    // time-averaged
  Matrix similarity;
  SpectralPartition partition;
  SubsystemDecomposition subsystems;
};

/// Nominal trajectory, averaged Jacobian, similarity, spectrum, gap and clusters.
NetworkDecomposition decompose_network(const NetworkModel& model, const DecomposeOptions& options);

}  // namespace wavepwr
