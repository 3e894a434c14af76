#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/partition.hpp"

namespace wavepwr {

enum class GapMode {
  kAbsolute,  // lambda_{i+1} - lambda_i
  kRelative,  // (lambda_{i+1} - lambda_i) / lambda_{i+1}
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // n x k, unit columns, right eigenvectors of L
  std::size_t gap_index = 1;
  // Selected gap divided by the next-largest consecutive gap.
  double gap_ratio = 0.0;
  // Index i such that eigenvalues i and i+1 differ by less than kDegeneracyTolerance.
  std::vector<std::size_t> degenerate_pairs;

  static constexpr double kDegeneracyTolerance = 1e-10;

  bool degenerate() const { return !degenerate_pairs.empty(); }
};

/// First k eigenpairs of L by dense symmetric eigensolve.
///
/// Eigenvectors are unit norm with the largest-magnitude entry positive.
/// Inside the null space the first vector is aligned with the constant
/// vector and the rest are made D-orthogonal to it, so the second null
/// vector of a two-component graph is the signed component indicator.
SpectrumReport dense_spectrum(const NormalizedLaplacian& laplacian, std::size_t k,
                              GapMode mode = GapMode::kAbsolute);

/// Full spectrum of I - D^{-1/2} W D^{-1/2}, ascending.
std::vector<double> dense_eigenvalues(const NormalizedLaplacian& laplacian);

/// 1-based count of eigenvalues below the largest consecutive gap.
/// Ties resolve toward the smaller index.
std::size_t detect_spectral_gap(std::span<const double> eigenvalues,
                                GapMode mode = GapMode::kAbsolute);

double gap_ratio(std::span<const double> eigenvalues, std::size_t gap_index,
                 GapMode mode = GapMode::kAbsolute);

/// Dense reference clustering: sign code of eigenvectors 2..k+1.
ClusterAssignment oracle_cluster(const NormalizedLaplacian& laplacian, std::size_t k);

}  // namespace wavepwr
