#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wavepwr {

/// Orthogonal polynomial family matched to a parameter density.
enum class Family {
  kLegendre,  // uniform on [-1, 1], weight 1/2
  kHermite,   // standard normal, probabilists' convention
};

/// Density of one uncertain parameter.
struct Distribution {
  enum class Kind { kUniform, kGaussian };

  Kind kind = Kind::kUniform;
  double a = -1.0;  // uniform: lower bound; gaussian: mean
  double b = 1.0;   // uniform: upper bound; gaussian: standard deviation

  static Distribution uniform(double lo, double hi);
  static Distribution gaussian(double mean, double sigma);

  void validate() const;
  Family family() const;
  double mean() const;
  double variance() const;
  /// Map to the standard variable of the family ([-1,1] or N(0,1)).
  double to_standard(double xi) const;
  double from_standard(double z) const;
  /// Inverse CDF, u in (0, 1).
  double from_unit(double u) const;
  std::string describe() const;
};

/// A random entry of the model parameter vector.
struct RandomParam {
  std::size_t index = 0;
  Distribution dist;
};

/// Nodes and weights; weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// l-point Gauss rule on the family's standard variable.
QuadratureRule standard_rule(Family family, std::size_t l);

/// l-point Gauss rule for the distribution, mapped to parameter space.
/// Exact for polynomials of degree <= 2l - 1.
QuadratureRule quadrature_rule(const Distribution& dist, std::size_t l);

/// Orthonormal polynomials psi_0..psi_{max_degree} at z (standard variable).
void orthonormal_polys(Family family, int max_degree, double z, std::span<double> out);
double orthonormal_poly(Family family, int degree, double z);

}  // namespace wavepwr
