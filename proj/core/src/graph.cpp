#include "wavepwr/graph.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "wavepwr/error.hpp"

namespace wavepwr {

WeightedGraph::WeightedGraph(Matrix weights) : weights_(std::move(weights)) {
  const auto n = weights_.rows();
  if (n != weights_.cols()) {
    throw GraphError("weight matrix must be square");
  }
  if (n < 1) {
    throw GraphError("graph must have at least one node");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw GraphError("nonzero diagonal weight at node " + std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = weights_(i, j);
      const double b = weights_(j, i);
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        std::ostringstream os;
        os << "invalid weight between nodes " << i << " and " << j;
        throw GraphError(os.str());
      }
      if (std::abs(a - b) > kSymmetryTolerance) {
        std::ostringstream os;
        os << "asymmetric weights between nodes " << i << " and " << j << " (" << a << " vs "
           << b << ")";
        throw GraphError(os.str());
      }
    }
  }
  degrees_ = weights_.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degrees_(i) > 0.0)) {
      throw GraphError("disconnected node " + std::to_string(i) + " has no positive edge");
    }
  }
}

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw GraphError("self loop at node " + std::to_string(e.u));
    }
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    w(u, v) += e.weight;
    w(v, u) += e.weight;
  }
  return WeightedGraph(std::move(w));
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t m = 0;
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < weights_.cols(); ++j) {
      if (weights_(i, j) > 0.0) ++m;
    }
  }
  return m;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < weights_.cols(); ++j) {
      if (weights_(i, j) > 0.0) {
        out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weights_(i, j)});
      }
    }
  }
  return out;
}

NormalizedLaplacian::NormalizedLaplacian(const WeightedGraph& graph) : degrees_(graph.degrees()) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  const Matrix& w = graph.weights();
  std::vector<Eigen::Triplet<double>> lap;
  std::vector<Eigen::Triplet<double>> wts;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double deg = degrees_(i);
    if (!(deg > 0.0)) {
      throw GraphError("zero degree at node " + std::to_string(i));
    }
    lap.emplace_back(i, i, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i && w(i, j) > 0.0) {
        lap.emplace_back(i, j, -w(i, j) / deg);
        wts.emplace_back(i, j, w(i, j));
      }
    }
  }
  sparse_.resize(n, n);
  sparse_.setFromTriplets(lap.begin(), lap.end());
  sparse_.makeCompressed();
  weights_.resize(n, n);
  weights_.setFromTriplets(wts.begin(), wts.end());
  weights_.makeCompressed();
}

Matrix NormalizedLaplacian::symmetric() const {
  const auto n = static_cast<Eigen::Index>(size());
  const Vector inv_sqrt = degrees_.cwiseSqrt().cwiseInverse();
  Matrix s = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (SparseRowMatrix::InnerIterator it(weights_, i); it; ++it) {
      s(i, it.col()) -= inv_sqrt(i) * it.value() * inv_sqrt(it.col());
    }
  }
  return s;
}

Matrix similarity_weights(const Matrix& jbar) {
  if (jbar.rows() != jbar.cols()) {
    throw GraphError("Jacobian must be square");
  }
  if (jbar.rows() < 2) {
    throw GraphError("Jacobian must be at least 2x2");
  }
  Matrix w = 0.5 * (jbar.cwiseAbs() + jbar.transpose().cwiseAbs());
  w.diagonal().setZero();
  return w;
}

WeightedGraph similarity_from_jacobian(const Matrix& jbar) {
  return WeightedGraph(similarity_weights(jbar));
}

NormalizedLaplacian build_normalized_laplacian(const WeightedGraph& graph) {
  return NormalizedLaplacian(graph);
}

namespace {

template <typename Neighbors>
std::vector<std::size_t> flood_fill(std::size_t n, Neighbors&& neighbors) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnset);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    std::queue<std::size_t> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      neighbors(u, [&](std::size_t v) {
        if (label[v] == kUnset) {
          label[v] = next;
          q.push(v);
        }
      });
    }
    ++next;
  }
  return label;
}

}  // namespace

std::vector<std::size_t> connected_components(const Matrix& weights) {
  const auto n = static_cast<std::size_t>(weights.rows());
  return flood_fill(n, [&](std::size_t u, auto&& visit) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v != u && weights(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) > 0.0) {
        visit(v);
      }
    }
  });
}

std::vector<std::size_t> connected_components(const NormalizedLaplacian& laplacian) {
  const SparseRowMatrix& l = laplacian.sparse();
  return flood_fill(laplacian.size(), [&](std::size_t u, auto&& visit) {
    for (SparseRowMatrix::InnerIterator it(l, static_cast<Eigen::Index>(u)); it; ++it) {
      if (static_cast<std::size_t>(it.col()) != u && it.value() != 0.0) {
        visit(static_cast<std::size_t>(it.col()));
      }
    }
  });
}

}  // namespace wavepwr
