#include "wavepwr/polychaos.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavepwr {
namespace {

int total_degree(const MultiIndex& m) {
  int s = 0;
  for (int d : m) s += d;
  return s;
}

void enumerate(std::size_t v, const std::vector<int>& max_degree, int budget, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (v == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (int d = 0; d <= std::min(max_degree[v], budget); ++d) {
    cur[v] = d;
    enumerate(v + 1, max_degree, budget - d, cur, out);
  }
  cur[v] = 0;
}

}  // namespace

PolyBasis::PolyBasis() : indices_{MultiIndex{}} {}

PolyBasis::PolyBasis(std::vector<RandomParam> vars, std::vector<MultiIndex> indices)
    : vars_(std::move(vars)), indices_(std::move(indices)), max_degree_(vars_.size(), 0) {
  if (indices_.empty()) throw std::invalid_argument("basis needs at least one term");
  for (std::size_t a = 0; a < vars_.size(); ++a) {
    for (std::size_t b = a + 1; b < vars_.size(); ++b) {
      if (vars_[a].index == vars_[b].index) throw std::invalid_argument("duplicate basis variable");
    }
  }
  for (const auto& m : indices_) {
    if (m.size() != vars_.size()) throw std::invalid_argument("multi-index length mismatch");
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] < 0) throw std::invalid_argument("negative degree");
      max_degree_[v] = std::max(max_degree_[v], m[v]);
    }
  }
  if (total_degree(indices_.front()) != 0) throw std::invalid_argument("first basis term must be constant");
}

PolyBasis PolyBasis::tensor(std::vector<RandomParam> vars, const std::vector<int>& max_degree, int total_order) {
  if (max_degree.size() != vars.size()) throw std::invalid_argument("degree list length mismatch");
  if (total_order < 0) throw std::invalid_argument("total order must be nonnegative");
  std::vector<MultiIndex> all;
  MultiIndex cur(vars.size(), 0);
  enumerate(0, max_degree, total_order, cur, all);
  std::stable_sort(all.begin(), all.end(), [](const MultiIndex& x, const MultiIndex& y) {
    const int dx = total_degree(x);
    const int dy = total_degree(y);
    if (dx != dy) return dx < dy;
    return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
  });
  return PolyBasis(std::move(vars), std::move(all));
}

TermKey PolyBasis::key(std::size_t term) const {
  TermKey k;
  const auto& m = indices_.at(term);
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] != 0) k.emplace_back(vars_[v].index, m[v]);
  }
  std::sort(k.begin(), k.end());
  return k;
}

std::optional<std::size_t> PolyBasis::find(const TermKey& key) const {
  for (std::size_t t = 0; t < indices_.size(); ++t) {
    if (this->key(t) == key) return t;
  }
  return std::nullopt;
}

Vector PolyBasis::evaluate(std::span<const double> params) const {
  std::vector<double> local(vars_.size());
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    if (vars_[v].index >= params.size()) throw std::out_of_range("parameter vector too short for basis");
    local[v] = params[vars_[v].index];
  }
  return evaluate_local(local);
}

Vector PolyBasis::evaluate_local(std::span<const double> values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("value count does not match basis variables");
  std::vector<std::vector<double>> uni(vars_.size());
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    uni[v].resize(static_cast<std::size_t>(max_degree_[v]) + 1);
    const auto& dist = vars_[v].dist;
    orthonormal_polys(dist.family(), max_degree_[v], dist.to_standard(values[v]), uni[v]);
  }
  Vector out(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t t = 0; t < indices_.size(); ++t) {
    double p = 1.0;
    for (std::size_t v = 0; v < vars_.size(); ++v) p *= uni[v][static_cast<std::size_t>(indices_[t][v])];
    out(static_cast<Eigen::Index>(t)) = p;
  }
  return out;
}

void CollocationGrid::fill(std::size_t q, std::span<double> params) const {
  for (std::size_t v = 0; v < vars.size(); ++v) {
    params[vars[v].index] = points(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(v));
  }
}

CollocationGrid tensor_grid(std::vector<RandomParam> vars, std::vector<std::size_t> levels) {
  if (levels.size() != vars.size()) throw std::invalid_argument("level list length mismatch");
  std::vector<QuadratureRule> rules;
  std::size_t total = 1;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    rules.push_back(quadrature_rule(vars[v].dist, levels[v]));
    total *= levels[v];
  }
  CollocationGrid grid;
  grid.points.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(vars.size()));
  grid.weights.assign(total, 1.0);
  for (std::size_t q = 0; q < total; ++q) {
    std::size_t rem = q;
    for (std::size_t v = vars.size(); v-- > 0;) {
      const std::size_t i = rem % levels[v];
      rem /= levels[v];
      grid.points(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(v)) = rules[v].nodes[i];
      grid.weights[q] *= rules[v].weights[i];
    }
  }
  grid.vars = std::move(vars);
  grid.levels = std::move(levels);
  return grid;
}

Matrix gpc_coefficients(const Matrix& samples, const CollocationGrid& grid, const PolyBasis& basis) {
  if (static_cast<std::size_t>(samples.rows()) != grid.size()) {
    throw std::invalid_argument("sample rows do not match grid size");
  }
  std::vector<std::size_t> local(basis.variables().size());
  for (std::size_t v = 0; v < local.size(); ++v) {
    const auto it = std::find_if(grid.vars.begin(), grid.vars.end(), [&](const RandomParam& r) {
      return r.index == basis.variables()[v].index;
    });
    if (it == grid.vars.end()) throw std::invalid_argument("basis variable missing from grid");
    local[v] = static_cast<std::size_t>(it - grid.vars.begin());
  }
  Matrix coeffs = Matrix::Zero(static_cast<Eigen::Index>(basis.size()), samples.cols());
  std::vector<double> values(local.size());
  for (std::size_t q = 0; q < grid.size(); ++q) {
    for (std::size_t v = 0; v < local.size(); ++v) {
      values[v] = grid.points(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(local[v]));
    }
    const Vector psi = basis.evaluate_local(values) * grid.weights[q];
    coeffs.noalias() += psi * samples.row(static_cast<Eigen::Index>(q));
  }
  return coeffs;
}

std::size_t GpcWaveform::slot(std::size_t state) const {
  const auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) throw std::out_of_range("state not owned by waveform");
  return static_cast<std::size_t>(it - states.begin());
}

Vector GpcWaveform::mean(std::size_t s) const { return coefficients.at(s).row(0).transpose(); }

Vector GpcWaveform::variance(std::size_t s) const {
  const Matrix& c = coefficients.at(s);
  if (c.rows() <= 1) return Vector::Zero(c.cols());
  return c.bottomRows(c.rows() - 1).colwise().squaredNorm().transpose();
}

Vector GpcWaveform::evaluate(std::size_t s, std::span<const double> params) const {
  return coefficients.at(s).transpose() * basis.evaluate(params);
}

GpcWaveform project_waveform(const GpcWaveform& waveform, std::span<const std::size_t> target) {
  const auto& vars = waveform.basis.variables();
  std::vector<RandomParam> kept_vars;
  std::vector<std::size_t> kept_pos;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (std::find(target.begin(), target.end(), vars[v].index) != target.end()) {
      kept_vars.push_back(vars[v]);
      kept_pos.push_back(v);
    }
  }
  std::vector<MultiIndex> kept_indices;
  std::vector<Eigen::Index> rows;
  const auto& indices = waveform.basis.indices();
  for (std::size_t t = 0; t < indices.size(); ++t) {
    bool keep = true;
    for (std::size_t v = 0; v < vars.size() && keep; ++v) {
      const bool in_target = std::find(kept_pos.begin(), kept_pos.end(), v) != kept_pos.end();
      if (!in_target && indices[t][v] != 0) keep = false;
    }
    if (!keep) continue;
    MultiIndex m;
    for (std::size_t v : kept_pos) m.push_back(indices[t][v]);
    kept_indices.push_back(std::move(m));
    rows.push_back(static_cast<Eigen::Index>(t));
  }
  GpcWaveform out;
  out.subsystem = waveform.subsystem;
  out.times = waveform.times;
  out.states = waveform.states;
  out.mean_only = kept_vars.empty();
  out.basis = PolyBasis(std::move(kept_vars), std::move(kept_indices));
  for (const Matrix& c : waveform.coefficients) {
    Matrix r(static_cast<Eigen::Index>(rows.size()), c.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) r.row(static_cast<Eigen::Index>(i)) = c.row(rows[i]);
    out.coefficients.push_back(std::move(r));
  }
  return out;
}

}  // namespace wavepwr
