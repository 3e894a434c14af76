#include "wavepwr/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>

namespace wavepwr {
namespace {

// Three-term recurrence for orthonormal polynomials (both families are
// symmetric, so the diagonal coefficient is zero):
//   z psi_n = beta_{n+1} psi_{n+1} + beta_n psi_{n-1}
double beta(Family family, int n) {
  const auto x = static_cast<double>(n);
  switch (family) {
    case Family::kLegendre:
      return x / std::sqrt(4.0 * x * x - 1.0);
    case Family::kHermite:
      return std::sqrt(x);
  }
  return 0.0;
}

}  // namespace

Distribution Distribution::uniform(double lo, double hi) {
  Distribution d{Kind::kUniform, lo, hi};
  d.validate();
  return d;
}

Distribution Distribution::gaussian(double mean, double sigma) {
  Distribution d{Kind::kGaussian, mean, sigma};
  d.validate();
  return d;
}

void Distribution::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("distribution parameters must be finite");
  if (kind == Kind::kUniform && !(b > a)) throw std::invalid_argument("uniform distribution needs hi > lo");
  if (kind == Kind::kGaussian && !(b > 0.0)) throw std::invalid_argument("gaussian distribution needs sigma > 0");
}

Family Distribution::family() const {
  return kind == Kind::kUniform ? Family::kLegendre : Family::kHermite;
}

double Distribution::mean() const { return kind == Kind::kUniform ? 0.5 * (a + b) : a; }

double Distribution::variance() const {
  return kind == Kind::kUniform ? (b - a) * (b - a) / 12.0 : b * b;
}

double Distribution::to_standard(double xi) const {
  return kind == Kind::kUniform ? (2.0 * xi - a - b) / (b - a) : (xi - a) / b;
}

double Distribution::from_standard(double z) const {
  return kind == Kind::kUniform ? 0.5 * (a + b) + 0.5 * (b - a) * z : a + b * z;
}

double Distribution::from_unit(double u) const {
  if (kind == Kind::kUniform) return a + (b - a) * u;
  return a + b * (-std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u));
}

std::string Distribution::describe() const {
  std::ostringstream os;
  if (kind == Kind::kUniform) {
    os << "uniform lo=" << a << " hi=" << b;
  } else {
    os << "gaussian mean=" << a << " sigma=" << b;
  }
  return os.str();
}

void orthonormal_polys(Family family, int max_degree, double z, std::span<double> out) {
  if (max_degree < 0) return;
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = z / beta(family, 1);
  for (int n = 1; n < max_degree; ++n) {
    out[static_cast<std::size_t>(n + 1)] =
        (z * out[static_cast<std::size_t>(n)] - beta(family, n) * out[static_cast<std::size_t>(n - 1)]) /
        beta(family, n + 1);
  }
}

double orthonormal_poly(Family family, int degree, double z) {
  std::vector<double> buf(static_cast<std::size_t>(degree) + 1);
  orthonormal_polys(family, degree, z, buf);
  return buf.back();
}

QuadratureRule standard_rule(Family family, std::size_t l) {
  if (l < 1) throw std::invalid_argument("quadrature level must be at least 1");
  QuadratureRule rule;
  if (l == 1) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix.
  const auto n = static_cast<Eigen::Index>(l);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = beta(family, static_cast<int>(i));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& x = solver.eigenvalues();

  std::vector<double> psi(l + 1);
  std::vector<double> d(l + 1, 0.0);
  const int deg = static_cast<int>(l);
  rule.nodes.resize(l);
  rule.weights.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    double z = x(static_cast<Eigen::Index>(i));
    // Newton polish on psi_l; the derivative follows the differentiated recurrence.
    for (int it = 0; it < 3; ++it) {
      orthonormal_polys(family, deg, z, psi);
      d[1] = 1.0 / beta(family, 1);
      for (int k = 1; k < deg; ++k) {
        d[static_cast<std::size_t>(k + 1)] =
            (psi[static_cast<std::size_t>(k)] + z * d[static_cast<std::size_t>(k)] -
             beta(family, k) * d[static_cast<std::size_t>(k - 1)]) /
            beta(family, k + 1);
      }
      if (d[l] == 0.0) break;
      const double step = psi[l] / d[l];
      z -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    orthonormal_polys(family, deg - 1, z, psi);
    double sum = 0.0;
    for (std::size_t k = 0; k < l; ++k) sum += psi[k] * psi[k];
    rule.nodes[i] = z;
    rule.weights[i] = 1.0 / sum;
  }
  // Symmetrize: both families have symmetric rules.
  for (std::size_t i = 0; i < l / 2; ++i) {
    const std::size_t j = l - 1 - i;
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double weight = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -node;
    rule.nodes[j] = node;
    rule.weights[i] = rule.weights[j] = weight;
  }
  if (l % 2 == 1) rule.nodes[l / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

QuadratureRule quadrature_rule(const Distribution& dist, std::size_t l) {
  dist.validate();
  QuadratureRule rule = standard_rule(dist.family(), l);
  for (double& z : rule.nodes) z = dist.from_standard(z);
  return rule;
}

}  // namespace wavepwr
