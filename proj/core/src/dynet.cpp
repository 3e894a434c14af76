#include "wavepwr/dynet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "rk4.hpp"
#include "wavepwr/error.hpp"

namespace wavepwr {
namespace {

std::span<const double> view(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

NetworkModel::NetworkModel(std::size_t n, ComponentFunction f,
                           std::vector<std::vector<std::size_t>> param_map, Vector nominal_params,
                           Vector nominal_state, std::string kind)
    : n_(n),
      f_(std::move(f)),
      param_map_(std::move(param_map)),
      nominal_params_(std::move(nominal_params)),
      nominal_state_(std::move(nominal_state)),
      kind_(std::move(kind)) {
  if (n_ == 0) throw std::invalid_argument("model must have at least one state");
  if (!f_) throw std::invalid_argument("model needs a component function");
  if (param_map_.size() != n_) throw std::invalid_argument("param_map must list every state");
  if (static_cast<std::size_t>(nominal_state_.size()) != n_) {
    throw std::invalid_argument("nominal state dimension mismatch");
  }
  for (const auto& ps : param_map_) {
    for (std::size_t p : ps) {
      if (p >= param_dim()) throw std::invalid_argument("param_map index out of range");
    }
  }
}

void NetworkModel::evaluate(std::span<const double> x, std::span<const double> xi, double t,
                            std::span<double> out) const {
  for (std::size_t i = 0; i < n_; ++i) out[i] = f_(i, x, xi, t);
}

std::vector<double> uniform_time_grid(double t0, double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
  const double ratio = horizon / dt;
  const auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(static_cast<double>(steps) * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
    throw std::invalid_argument("horizon must be an integer multiple of dt");
  }
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = t0 + static_cast<double>(k) * dt;
  return times;
}

Trajectory integrate(const NetworkModel& model, const Vector& x0, const Vector& params, double t0,
                     double horizon, double dt) {
  const std::size_t n = model.state_dim();
  if (static_cast<std::size_t>(x0.size()) != n) throw std::invalid_argument("x0 dimension mismatch");
  if (static_cast<std::size_t>(params.size()) != model.param_dim()) {
    throw std::invalid_argument("parameter dimension mismatch");
  }
  Trajectory traj;
  traj.times = uniform_time_grid(t0, horizon, dt);
  traj.dt = dt;
  traj.states.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(traj.times.size()));
  traj.states.col(0) = x0;

  std::vector<double> x(x0.data(), x0.data() + n);
  std::vector<double> work;
  const auto xi = view(params);
  auto rhs = [&](double t, int, std::span<const double> state, std::span<double> dx) {
    model.evaluate(state, xi, t, dx);
  };
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    detail::rk4_step(rhs, traj.times[k - 1], dt, x, work);
    if (!detail::all_finite(x)) {
      std::ostringstream os;
      os << "integration blow-up at t = " << traj.times[k];
      throw IntegrationError(os.str(), traj.times[k]);
    }
    traj.states.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(n));
  }
  return traj;
}

Matrix jacobian_fd(const NetworkModel& model, const Vector& x, const Vector& params, double t) {
  const std::size_t n = model.state_dim();
  Matrix jac(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> probe(x.data(), x.data() + n);
  std::vector<double> plus(n), minus(n);
  const auto xi = view(params);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(probe[j]));
    const double saved = probe[j];
    probe[j] = saved + h;
    model.evaluate(probe, xi, t, plus);
    probe[j] = saved - h;
    model.evaluate(probe, xi, t, minus);
    probe[j] = saved;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = (plus[i] - minus[i]) / (2.0 * h);
      if (!std::isfinite(d)) {
        std::ostringstream os;
        os << "non-finite Jacobian probe at entry (" << i << ", " << j << ")";
        throw Error(os.str());
      }
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    }
  }
  return jac;
}

Matrix time_avg_jacobian(const NetworkModel& model, const Trajectory& trajectory,
                         const Vector& params) {
  const std::size_t m = trajectory.times.size();
  if (m == 0) throw std::invalid_argument("empty trajectory");
  const auto n = static_cast<Eigen::Index>(model.state_dim());
  if (m == 1) return jacobian_fd(model, trajectory.states.col(0), params, trajectory.times[0]);

  Matrix sum = Matrix::Zero(n, n);
  Matrix prev = jacobian_fd(model, trajectory.states.col(0), params, trajectory.times[0]);
  for (std::size_t k = 1; k < m; ++k) {
    Matrix cur = jacobian_fd(model, trajectory.states.col(static_cast<Eigen::Index>(k)), params,
                             trajectory.times[k]);
    sum += 0.5 * (trajectory.times[k] - trajectory.times[k - 1]) * (prev + cur);
    prev = std::move(cur);
  }
  const double span = trajectory.times.back() - trajectory.times.front();
  if (!(span > 0.0)) throw std::invalid_argument("trajectory time span must be positive");
  return sum / span;
}

SubsystemDecomposition decompose(const NetworkModel& model, const ClusterAssignment& assignment) {
  if (assignment.size() != model.state_dim()) {
    throw std::invalid_argument("assignment must cover every state");
  }
  const auto canon = canonical_labels(assignment.labels);
  const std::size_t count = *std::max_element(canon.begin(), canon.end()) + 1;
  std::vector<std::vector<std::size_t>> clusters(count);
  for (std::size_t i = 0; i < canon.size(); ++i) clusters[canon[i]].push_back(i);
  return decompose(model, clusters);
}

SubsystemDecomposition decompose(const NetworkModel& model,
                                 const std::vector<std::vector<std::size_t>>& clusters) {
  const std::size_t n = model.state_dim();
  SubsystemDecomposition out;
  constexpr auto kUnowned = static_cast<std::size_t>(-1);
  out.owner.assign(n, kUnowned);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) throw std::invalid_argument("empty cluster " + std::to_string(c));
    for (std::size_t s : clusters[c]) {
      if (s >= n) throw std::invalid_argument("cluster state index out of range");
      if (out.owner[s] != kUnowned) {
        throw std::invalid_argument("state " + std::to_string(s) + " assigned twice");
      }
      out.owner[s] = c;
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (out.owner[s] == kUnowned) {
      throw std::invalid_argument("state " + std::to_string(s) + " not assigned");
    }
  }

  const Matrix jac = jacobian_fd(model, model.nominal_state(), model.nominal_params(), 0.0);
  out.subsystems.resize(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    Subsystem& sub = out.subsystems[c];
    sub.states = clusters[c];
    std::sort(sub.states.begin(), sub.states.end());
    std::set<std::size_t> params, interface, neighbors;
    for (std::size_t s : sub.states) {
      params.insert(model.param_map()[s].begin(), model.param_map()[s].end());
      for (std::size_t j = 0; j < n; ++j) {
        if (out.owner[j] == c) continue;
        if (std::abs(jac(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j))) >
            kInterfaceSensitivity) {
          interface.insert(j);
          neighbors.insert(out.owner[j]);
        }
      }
    }
    sub.own_params.assign(params.begin(), params.end());
    sub.interface_states.assign(interface.begin(), interface.end());
    sub.neighbors.assign(neighbors.begin(), neighbors.end());
  }
  for (Subsystem& sub : out.subsystems) {
    std::set<std::size_t> coupling;
    for (std::size_t nb : sub.neighbors) {
      for (std::size_t p : out.subsystems[nb].own_params) {
        if (!std::binary_search(sub.own_params.begin(), sub.own_params.end(), p)) coupling.insert(p);
      }
    }
    sub.neighbor_params.assign(coupling.begin(), coupling.end());
  }
  return out;
}

std::pair<double, double> order_parameter(std::span<const double> phases) {
  if (phases.empty()) return {0.0, 0.0};
  std::complex<double> z{0.0, 0.0};
  for (double x : phases) z += std::polar(1.0, x);
  z /= static_cast<double>(phases.size());
  return {std::min(1.0, std::abs(z)), std::arg(z)};
}

}  // namespace wavepwr
