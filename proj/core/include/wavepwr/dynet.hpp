#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/partition.hpp"

namespace wavepwr {

/// f_i(x, xi, t) for a single state index i.
using ComponentFunction =
    std::function<double(std::size_t i, std::span<const double> x, std::span<const double> xi,
                         double t)>;

/// Coupled ODE network x' = f(x, xi, t) with per-state parameter map.
///
/// The component function must be reentrant: independent trajectories
/// are evaluated concurrently.
class NetworkModel {
 public:
  NetworkModel(std::size_t n, ComponentFunction f,
               std::vector<std::vector<std::size_t>> param_map, Vector nominal_params,
               Vector nominal_state, std::string kind = "custom");

  std::size_t state_dim() const { return n_; }
  std::size_t param_dim() const { return static_cast<std::size_t>(nominal_params_.size()); }
  const std::string& kind() const { return kind_; }

  double component(std::size_t i, std::span<const double> x, std::span<const double> xi,
                   double t) const {
    return f_(i, x, xi, t);
  }
  void evaluate(std::span<const double> x, std::span<const double> xi, double t,
                std::span<double> out) const;

  /// Parameter indices entering f_i.
  const std::vector<std::vector<std::size_t>>& param_map() const { return param_map_; }
  const Vector& nominal_params() const { return nominal_params_; }
  /// Initial condition x(t0) used for nominal runs and decomposition probes.
  const Vector& nominal_state() const { return nominal_state_; }

 private:
  std::size_t n_;
  ComponentFunction f_;
  std::vector<std::vector<std::size_t>> param_map_;
  Vector nominal_params_;
  Vector nominal_state_;
  std::string kind_;
};

/// States on a uniform time grid; column k is x(times[k]).
struct Trajectory {
  std::vector<double> times;
  Matrix states;  // n x times.size()
  double dt = 0.0;
};

/// Uniform grid t0, t0+dt, ..., t0+T. T/dt must be an integer to 1e-9.
std::vector<double> uniform_time_grid(double t0, double horizon, double dt);

/// Classical fixed-step RK4.
Trajectory integrate(const NetworkModel& model, const Vector& x0, const Vector& params, double t0,
                     double horizon, double dt);

/// Central differences with h_j = 1e-6 max(1, |x_j|).
Matrix jacobian_fd(const NetworkModel& model, const Vector& x, const Vector& params, double t);

/// Trapezoidal time average of jacobian_fd along the trajectory.
Matrix time_avg_jacobian(const NetworkModel& model, const Trajectory& trajectory,
                         const Vector& params);

struct Subsystem {
  std::vector<std::size_t> states;            // owned, ascending
  std::vector<std::size_t> own_params;        // Lambda_i
  std::vector<std::size_t> interface_states;  // foreign states entering owned components
  std::vector<std::size_t> neighbors;         // subsystems owning the interface states
  std::vector<std::size_t> neighbor_params;   // Lambda_i^c
};

struct SubsystemDecomposition {
  std::vector<Subsystem> subsystems;
  std::vector<std::size_t> owner;  // state -> subsystem

  std::size_t size() const { return subsystems.size(); }
};

/// Interface detection threshold on |df_i/dx_j| at the nominal point.
inline constexpr double kInterfaceSensitivity = 1e-12;

SubsystemDecomposition decompose(const NetworkModel& model, const ClusterAssignment& assignment);
SubsystemDecomposition decompose(const NetworkModel& model,
                                 const std::vector<std::vector<std::size_t>>& clusters);

/// R e^{i phi} = mean_j e^{i x_j}; R in [0, 1], phi in (-pi, pi].
std::pair<double, double> order_parameter(std::span<const double> phases);

}  // namespace wavepwr
