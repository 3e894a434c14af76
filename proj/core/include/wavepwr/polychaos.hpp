#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/quadrature.hpp"

namespace wavepwr {

using MultiIndex = std::vector<int>;
/// Sparse form of a multi-index: (parameter index, degree) for nonzero degrees.
using TermKey = std::vector<std::pair<std::size_t, int>>;

/// Tensor-product orthonormal basis over a set of random parameters.
/// The first term is always the constant.
class PolyBasis {
 public:
  PolyBasis();
  PolyBasis(std::vector<RandomParam> vars, std::vector<MultiIndex> indices);

  /// All multi-indices with per-variable degree <= max_degree[v] and total
  /// degree <= total_order, graded then lexicographic.
  static PolyBasis tensor(std::vector<RandomParam> vars, const std::vector<int>& max_degree, int total_order);

  std::size_t size() const { return indices_.size(); }
  const std::vector<RandomParam>& variables() const { return vars_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  TermKey key(std::size_t term) const;
  std::optional<std::size_t> find(const TermKey& key) const;

  /// Basis values at a full model parameter vector.
  Vector evaluate(std::span<const double> params) const;
  /// Basis values at per-variable values, in the order of variables().
  Vector evaluate_local(std::span<const double> values) const;

 private:
  std::vector<RandomParam> vars_;
  std::vector<MultiIndex> indices_;
  std::vector<int> max_degree_;
};

/// Tensor collocation grid in parameter space.
struct CollocationGrid {
  std::vector<RandomParam> vars;
  std::vector<std::size_t> levels;
  Matrix points;                // size() x vars.size()
  std::vector<double> weights;  // sum to one

  std::size_t size() const { return weights.size(); }
  /// Overwrite the grid variables of a full parameter vector with point q.
  void fill(std::size_t q, std::span<double> params) const;
};

/// Tensor grid with levels[v] Gauss points along variable v (last varies fastest).
CollocationGrid tensor_grid(std::vector<RandomParam> vars, std::vector<std::size_t> levels);

/// Coefficients a_m = sum_q w_q psi_m(xi_q) X(q, :). Returns basis.size() x X.cols().
Matrix gpc_coefficients(const Matrix& samples, const CollocationGrid& grid, const PolyBasis& basis);

/// Polynomial chaos expansion of the state waveforms owned by one subsystem.
struct GpcWaveform {
  std::size_t subsystem = 0;
  std::vector<double> times;
  PolyBasis basis;
  std::vector<std::size_t> states;
  std::vector<Matrix> coefficients;  // per state: basis.size() x times.size()
  bool mean_only = false;

  std::size_t slot(std::size_t state) const;
  Vector mean(std::size_t slot) const;
  Vector variance(std::size_t slot) const;
  /// Waveform of one state at a full parameter vector.
  Vector evaluate(std::size_t slot, std::span<const double> params) const;
};

/// Restrict a waveform to the parameters in target: terms involving other
/// variables are dropped (their expectation is zero). If no variable of the
/// waveform is in target the result keeps only the constant term and is
/// flagged mean_only.
GpcWaveform project_waveform(const GpcWaveform& waveform, std::span<const std::size_t> target);

}  // namespace wavepwr
