#pragma once

#include "wavepwr/dynet.hpp"

namespace wavepwr {

/// x_i' = omega_i + sum_j K_ij sin(x_j - x_i). Parameter i is omega_i.
NetworkModel kuramoto_builder(const Matrix& coupling, const Vector& omega, Vector x0 = Vector());

/// x_i' = -xi_i x_i + sum_j A_ij x_j. Parameter i is the decay rate xi_i.
NetworkModel linear_builder(const Matrix& coupling, const Vector& decay, Vector x0);

/// Three-state nearest-neighbour chain x1 - x2 - x3 with coupling eps.
NetworkModel chain3_builder(double eps, const Vector& decay, Vector x0);

}  // namespace wavepwr
