#include "wavepwr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wavepwr/error.hpp"

namespace wavepwr {
namespace {

// Eigenvalues of the symmetric form below this are treated as null-space.
constexpr double kNullTolerance = 1e-9;

void orient(Eigen::Ref<Vector> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      arg = i;
    }
  }
  if (v(arg) < 0.0) v = -v;
}

std::vector<double> consecutive_gaps(std::span<const double> ev, GapMode mode) {
  std::vector<double> gaps(ev.size() - 1);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    const double diff = ev[i + 1] - ev[i];
    if (mode == GapMode::kAbsolute) {
      gaps[i] = diff;
    } else {
      gaps[i] = ev[i + 1] > 0.0 ? diff / ev[i + 1] : 0.0;
    }
  }
  return gaps;
}

}  // namespace

std::size_t detect_spectral_gap(std::span<const double> eigenvalues, GapMode mode) {
  if (eigenvalues.size() < 2) {
    throw std::invalid_argument("spectral gap detection needs at least two eigenvalues");
  }
  const auto gaps = consecutive_gaps(eigenvalues, mode);
  std::size_t best = 0;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] > gaps[best]) best = i;
  }
  return best + 1;
}

double gap_ratio(std::span<const double> eigenvalues, std::size_t gap_index, GapMode mode) {
  if (eigenvalues.size() < 2 || gap_index < 1 || gap_index >= eigenvalues.size()) {
    return 0.0;
  }
  const auto gaps = consecutive_gaps(eigenvalues, mode);
  const double selected = gaps[gap_index - 1];
  double runner_up = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i != gap_index - 1) runner_up = std::max(runner_up, gaps[i]);
  }
  if (runner_up <= 0.0) return std::numeric_limits<double>::infinity();
  return selected / runner_up;
}

std::vector<double> dense_eigenvalues(const NormalizedLaplacian& laplacian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian.symmetric(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenError("dense eigensolver failed to converge", std::numeric_limits<double>::quiet_NaN());
  }
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumReport dense_spectrum(const NormalizedLaplacian& laplacian, std::size_t k, GapMode mode) {
  const std::size_t n = laplacian.size();
  if (k < 1 || k > n) {
    throw std::invalid_argument("dense_spectrum: k must lie in [1, n]");
  }
  const Matrix sym = laplacian.symmetric();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    const double residual =
        (sym * solver.eigenvectors() - solver.eigenvectors() * solver.eigenvalues().asDiagonal())
            .norm();
    std::ostringstream os;
    os << "dense eigensolver failed to converge (residual " << residual << ")";
    throw EigenError(os.str(), residual);
  }

  const Vector& values = solver.eigenvalues();
  Matrix phi = solver.eigenvectors();

  // Rotate the null space so its first vector is D^{1/2} 1 and the rest
  // are orthogonal to it.
  Eigen::Index null_dim = 0;
  while (null_dim < values.size() && values(null_dim) < kNullTolerance) ++null_dim;
  if (null_dim >= 1) {
    Vector ones = laplacian.degrees().cwiseSqrt();
    ones.normalize();
    phi.col(0) = ones;
    if (null_dim >= 2) {
      Matrix rest = solver.eigenvectors().leftCols(null_dim);
      rest -= ones * (ones.transpose() * rest);
      Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
      phi.middleCols(1, null_dim - 1) = svd.matrixU().leftCols(null_dim - 1);
    }
  }

  SpectrumReport report;
  report.eigenvalues.resize(k);
  report.eigenvectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  const Vector inv_sqrt = laplacian.degrees().cwiseSqrt().cwiseInverse();
  for (std::size_t j = 0; j < k; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    report.eigenvalues[j] = std::max(0.0, values(col));
    Vector v = inv_sqrt.cwiseProduct(phi.col(col));
    v.normalize();
    orient(v);
    report.eigenvectors.col(col) = v;
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (report.eigenvalues[j + 1] - report.eigenvalues[j] < SpectrumReport::kDegeneracyTolerance) {
      report.degenerate_pairs.push_back(j);
    }
  }
  if (k >= 2) {
    report.gap_index = detect_spectral_gap(report.eigenvalues, mode);
    report.gap_ratio = gap_ratio(report.eigenvalues, report.gap_index, mode);
  }
  return report;
}

ClusterAssignment oracle_cluster(const NormalizedLaplacian& laplacian, std::size_t k) {
  if (k < 1 || k + 1 > laplacian.size()) throw std::invalid_argument("oracle_cluster needs 1 <= k < n");
  const SpectrumReport rep = dense_spectrum(laplacian, k + 1);
  return sign_cluster(rep.eigenvectors.rightCols(static_cast<Eigen::Index>(k)));
}

}  // namespace wavepwr
