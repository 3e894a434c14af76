#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wavepwr::detail {

/// One classical RK4 step. `rhs(stage_time, stage_index, x, dx)` where
/// stage_index is 0 at t, 1 and 2 at t + dt/2, 3 at t + dt.
template <typename Rhs>
void rk4_step(Rhs&& rhs, double t, double dt, std::span<double> x, std::vector<double>& work) {
  const std::size_t n = x.size();
  work.resize(5 * n);
  std::span<double> k1(work.data(), n);
  std::span<double> k2(work.data() + n, n);
  std::span<double> k3(work.data() + 2 * n, n);
  std::span<double> k4(work.data() + 3 * n, n);
  std::span<double> tmp(work.data() + 4 * n, n);

  rhs(t, 0, std::span<const double>(x), k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
  rhs(t + 0.5 * dt, 1, std::span<const double>(tmp), k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
  rhs(t + 0.5 * dt, 2, std::span<const double>(tmp), k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
  rhs(t + dt, 3, std::span<const double>(tmp), k4);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace wavepwr::detail
