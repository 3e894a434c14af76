#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wavepwr/graph.hpp"

namespace wavepwr {

/// Cluster label per node. Labels produced by sign_cluster are binary
/// codes and therefore below 2^k_used.
struct ClusterAssignment {
  std::vector<std::uint64_t> labels;
  std::size_t k_used = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t cluster_count() const;
};

/// Binary sign code: label_i = sum_j [v_j(i) >= 0] 2^(j-1), columns j = 1..k.
/// Zero entries count as positive.
ClusterAssignment sign_cluster(const Matrix& eigenvectors);

/// Relabel to 0..m-1 in order of first appearance.
std::vector<std::size_t> canonical_labels(std::span<const std::uint64_t> labels);

/// True when both labelings induce the same partition of the nodes.
bool same_partition(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Fraction of nodes matched under the best one-to-one mapping between
/// predicted and reference clusters.
double partition_agreement(std::span<const std::uint64_t> predicted,
                           std::span<const std::uint64_t> reference);

}  // namespace wavepwr
