#include "wavepwr/models.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace wavepwr {
namespace {

struct SparseRows {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
};

std::shared_ptr<const SparseRows> sparse_rows(const Matrix& m, bool skip_diagonal) {
  auto out = std::make_shared<SparseRows>();
  out->rows.resize(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if ((skip_diagonal && i == j) || m(i, j) == 0.0) continue;
      out->rows[static_cast<std::size_t>(i)].emplace_back(static_cast<std::size_t>(j), m(i, j));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> identity_param_map(std::size_t n) {
  std::vector<std::vector<std::size_t>> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = {i};
  return map;
}

}  // namespace

NetworkModel kuramoto_builder(const Matrix& coupling, const Vector& omega, Vector x0) {
  if (coupling.rows() != coupling.cols()) throw std::invalid_argument("coupling matrix must be square");
  const auto n = static_cast<std::size_t>(coupling.rows());
  if (static_cast<std::size_t>(omega.size()) != n) {
    throw std::invalid_argument("omega length does not match coupling matrix");
  }
  if (x0.size() == 0) x0 = Vector::Zero(static_cast<Eigen::Index>(n));
  if (static_cast<std::size_t>(x0.size()) != n) throw std::invalid_argument("x0 length mismatch");

  auto rows = sparse_rows(coupling, true);
  auto f = [rows](std::size_t i, std::span<const double> x, std::span<const double> xi, double) {
    double acc = xi[i];
    for (const auto& [j, k] : rows->rows[i]) acc += k * std::sin(x[j] - x[i]);
    return acc;
  };
  return NetworkModel(n, f, identity_param_map(n), omega, std::move(x0), "kuramoto");
}

NetworkModel linear_builder(const Matrix& coupling, const Vector& decay, Vector x0) {
  if (coupling.rows() != coupling.cols()) throw std::invalid_argument("coupling matrix must be square");
  const auto n = static_cast<std::size_t>(coupling.rows());
  if (static_cast<std::size_t>(decay.size()) != n || static_cast<std::size_t>(x0.size()) != n) {
    throw std::invalid_argument("linear model dimension mismatch");
  }
  auto rows = sparse_rows(coupling, false);
  auto f = [rows](std::size_t i, std::span<const double> x, std::span<const double> xi, double) {
    double acc = -xi[i] * x[i];
    for (const auto& [j, a] : rows->rows[i]) acc += a * x[j];
    return acc;
  };
  return NetworkModel(n, f, identity_param_map(n), decay, std::move(x0), "linear");
}

NetworkModel chain3_builder(double eps, const Vector& decay, Vector x0) {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = a(1, 0) = a(1, 2) = a(2, 1) = eps;
  NetworkModel base = linear_builder(a, decay, std::move(x0));
  return NetworkModel(3,
                      [base](std::size_t i, std::span<const double> x, std::span<const double> xi,
                             double t) { return base.component(i, x, xi, t); },
                      base.param_map(), base.nominal_params(), base.nominal_state(), "chain3");
}

}  // namespace wavepwr
