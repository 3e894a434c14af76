#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wavepwr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Undirected edge of a weighted graph, 0-based endpoints.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// Symmetric, nonnegative weighted adjacency with zero diagonal.
///
/// Construction validates the invariants: W_ij == W_ji (to 1e-9),
/// W_ij >= 0, W_ii == 0 and every node carries at least one positive
/// incident weight. Immutable afterwards.
class WeightedGraph {
 public:
  static constexpr double kSymmetryTolerance = 1e-9;

  explicit WeightedGraph(Matrix weights);

  static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  const Vector& degrees() const { return degrees_; }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

 private:
  Matrix weights_;
  Vector degrees_;
};

/// Random-walk normalized Laplacian L = I - D^{-1} W.
///
/// Row i has L_ii = 1 and L_ij = -W_ij / deg_i on edges. The matrix is
/// not symmetric, but it is similar to I - D^{-1/2} W D^{-1/2}, so its
/// spectrum is real and lies in [0, 2].
class NormalizedLaplacian {
 public:
  explicit NormalizedLaplacian(const WeightedGraph& graph);

  std::size_t size() const { return static_cast<std::size_t>(sparse_.rows()); }
  const SparseRowMatrix& sparse() const { return sparse_; }
  Matrix dense() const { return Matrix(sparse_); }
  const Vector& degrees() const { return degrees_; }

  /// I - D^{-1/2} W D^{-1/2}; shares the spectrum of L.
  Matrix symmetric() const;

 private:
  SparseRowMatrix sparse_;
  SparseRowMatrix weights_;
  Vector degrees_;
};

/// W_ij = (|J_ij| + |J_ji|) / 2 off the diagonal, W_ii = 0.
WeightedGraph similarity_from_jacobian(const Matrix& jbar);

NormalizedLaplacian build_normalized_laplacian(const WeightedGraph& graph);

/// Symmetrized similarity without the isolated-node check. Used by the
/// decomposition pipeline, which treats isolated states as singleton
/// components before any Laplacian is formed.
Matrix similarity_weights(const Matrix& jbar);

/// Connected-component label per node (labels ordered by smallest member).
std::vector<std::size_t> connected_components(const Matrix& weights);
std::vector<std::size_t> connected_components(const NormalizedLaplacian& laplacian);

}  // namespace wavepwr
