#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavepwr/graph.hpp"

namespace wavepwr {

struct PlantedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> labels;  // ground-truth block per node
};

/// Independent edges with probability prob(block(u), block(v)), unit weights.
PlantedGraph stochastic_block_model(const std::vector<std::size_t>& blocks, const Matrix& prob,
                                    std::uint64_t seed);

/// Two-level block model: p_in inside blocks, p_out across.
PlantedGraph planted_partition(const std::vector<std::size_t>& blocks, double p_in, double p_out,
                               std::uint64_t seed);

double expected_edge_count(const std::vector<std::size_t>& blocks, double p_in, double p_out);

struct KuramotoBenchmarkOptions {
  std::size_t pairs = 40;
  double intra = 1.0;   // coupling inside a pair
  double inter = 0.05;  // ring coupling between consecutive pairs
  double omega_lo = 0.8;
  double omega_hi = 1.2;
  double phase_hi = 3.141592653589793;  // x0 ~ U[0, phase_hi]
};

/// Ring of strongly coupled oscillator pairs. The first member of each pair
/// (0-based even index) carries the uncertain frequency.
struct KuramotoBenchmark {
  Matrix coupling;
  Vector omega;
  Vector x0;
  std::vector<std::uint64_t> pair_labels;
  std::vector<std::size_t> uncertain;
};

KuramotoBenchmark kuramoto_benchmark(const KuramotoBenchmarkOptions& options, std::uint64_t seed);

}  // namespace wavepwr
