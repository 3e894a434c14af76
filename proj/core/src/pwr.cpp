#include "wavepwr/pwr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "rk4.hpp"
#include "wavepwr/error.hpp"

namespace wavepwr {

PwrError::PwrError(std::size_t subsystem, std::size_t iteration, std::size_t grid_point)
    : Error("subsystem " + std::to_string(subsystem) + " diverged at iteration " + std::to_string(iteration) +
            ", grid point " + std::to_string(grid_point)),
      subsystem_(subsystem),
      iteration_(iteration),
      grid_point_(grid_point) {}

void PwrOptions::validate() const {
  if (l_s < 1 || l_c < 1) throw std::invalid_argument("l_s and l_c must be at least 1");
  if (total_order < 0) throw std::invalid_argument("total order P must be nonnegative");
  if (max_iterations < 1) throw std::invalid_argument("I_max must be at least 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
}

Vector PwrReport::mean(std::size_t state) const {
  const auto& wf = waveforms.at(owner.at(state));
  return wf.mean(wf.slot(state));
}

Vector PwrReport::variance(std::size_t state) const {
  const auto& wf = waveforms.at(owner.at(state));
  return wf.variance(wf.slot(state));
}

Matrix PwrReport::evaluate(std::span<const double> params) const {
  Matrix out(static_cast<Eigen::Index>(owner.size()), static_cast<Eigen::Index>(times.size()));
  for (const auto& wf : waveforms) {
    const Vector psi = wf.basis.evaluate(params);
    for (std::size_t s = 0; s < wf.states.size(); ++s) {
      out.row(static_cast<Eigen::Index>(wf.states[s])) = (wf.coefficients[s].transpose() * psi).transpose();
    }
  }
  return out;
}

namespace {

std::vector<RandomParam> select(const std::map<std::size_t, RandomParam>& random,
                                const std::vector<std::size_t>& indices, const std::vector<std::size_t>& exclude) {
  std::vector<RandomParam> out;
  for (std::size_t idx : indices) {
    if (std::find(exclude.begin(), exclude.end(), idx) != exclude.end()) continue;
    const auto it = random.find(idx);
    if (it != random.end()) out.push_back(it->second);
  }
  return out;
}

// Per-subsystem state of one relaxation sweep.
struct Sweep {
  CollocationGrid grid;
  PolyBasis basis;
  std::vector<std::size_t> sigma;
  std::vector<GpcWaveform> sources;  // projected neighbour waveforms, indexed like neighbors
  std::vector<std::size_t> source_of;  // interface -> index into sources
  std::vector<Matrix> samples;  // per owned state: grid.size() x nt
};

// Solve the owned states of one subsystem at one parameter point with the
// interface states driven by the given waveforms.
void solve_subsystem(const NetworkModel& model, const Subsystem& sub, const Matrix& interface_values,
                     std::span<const double> params, const std::vector<double>& times, double dt,
                     std::vector<Matrix>& samples, std::size_t row, std::size_t subsystem_id, std::size_t iteration,
                     std::size_t grid_point) {
  const std::size_t m = sub.states.size();
  const std::size_t nt = times.size();
  std::vector<double> full(model.nominal_state().data(), model.nominal_state().data() + model.state_dim());
  std::vector<double> x(m);
  for (std::size_t a = 0; a < m; ++a) x[a] = full[sub.states[a]];
  std::vector<double> work;
  std::size_t k = 0;
  auto rhs = [&](double t, int stage, std::span<const double> state, std::span<double> dx) {
    for (std::size_t a = 0; a < m; ++a) full[sub.states[a]] = state[a];
    for (std::size_t b = 0; b < sub.interface_states.size(); ++b) {
      const auto r = static_cast<Eigen::Index>(b);
      const auto c = static_cast<Eigen::Index>(k);
      double v;
      if (stage == 0) {
        v = interface_values(r, c);
      } else if (stage == 3) {
        v = interface_values(r, c + 1);
      } else {
        v = 0.5 * (interface_values(r, c) + interface_values(r, c + 1));
      }
      full[sub.interface_states[b]] = v;
    }
    for (std::size_t a = 0; a < m; ++a) dx[a] = model.component(sub.states[a], full, params, t);
  };
  for (std::size_t a = 0; a < m; ++a) samples[a](static_cast<Eigen::Index>(row), 0) = x[a];
  for (k = 0; k + 1 < nt; ++k) {
    detail::rk4_step(rhs, times[k], dt, x, work);
    if (!detail::all_finite(x)) throw PwrError(subsystem_id, iteration, grid_point);
    for (std::size_t a = 0; a < m; ++a) samples[a](static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k + 1)) = x[a];
  }
}

double relative_change(const GpcWaveform& now, const GpcWaveform& before) {
  double metric = 0.0;
  std::map<TermKey, std::size_t> prev_rows;
  for (std::size_t t = 0; t < before.basis.size(); ++t) prev_rows.emplace(before.basis.key(t), t);
  std::vector<bool> matched(before.basis.size(), false);
  std::vector<std::ptrdiff_t> map_now(now.basis.size(), -1);
  for (std::size_t t = 0; t < now.basis.size(); ++t) {
    const auto it = prev_rows.find(now.basis.key(t));
    if (it != prev_rows.end()) {
      map_now[t] = static_cast<std::ptrdiff_t>(it->second);
      matched[it->second] = true;
    }
  }
  for (std::size_t s = 0; s < now.states.size(); ++s) {
    const Matrix& a = now.coefficients[s];
    const Matrix& b = before.coefficients[before.slot(now.states[s])];
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    double diff = 0.0;
    for (std::size_t t = 0; t < now.basis.size(); ++t) {
      const auto r = static_cast<Eigen::Index>(t);
      if (map_now[t] >= 0) {
        diff = std::max(diff, (a.row(r) - b.row(map_now[t])).cwiseAbs().maxCoeff());
      } else {
        diff = std::max(diff, a.row(r).cwiseAbs().maxCoeff());
      }
    }
    for (std::size_t t = 0; t < before.basis.size(); ++t) {
      if (!matched[t]) diff = std::max(diff, b.row(static_cast<Eigen::Index>(t)).cwiseAbs().maxCoeff());
    }
    metric = std::max(metric, diff / scale);
  }
  return metric;
}

}  // namespace

PwrReport pwr_solve(const NetworkModel& model, const SubsystemDecomposition& decomposition,
                    const std::vector<RandomParam>& params, const PwrOptions& options) {
  options.validate();
  const std::size_t n = model.state_dim();
  if (decomposition.owner.size() != n) throw std::invalid_argument("decomposition does not match model size");
  std::map<std::size_t, RandomParam> random;
  for (const auto& p : params) {
    if (p.index >= model.param_dim()) throw std::out_of_range("random parameter index out of range");
    p.dist.validate();
    if (!random.emplace(p.index, p).second) throw std::invalid_argument("duplicate random parameter");
  }

  PwrReport report;
  report.times = uniform_time_grid(options.t0, options.horizon, options.dt);
  report.owner = decomposition.owner;
  const std::size_t nt = report.times.size();
  const std::size_t ns = decomposition.size();
  const int ds = static_cast<int>(options.l_s) - 1;
  const int dc = static_cast<int>(options.l_c) - 1;

  std::vector<GpcWaveform> previous;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    std::vector<Sweep> sweeps(ns);
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t i = 0; i < ns; ++i) {
      const Subsystem& sub = decomposition.subsystems[i];
      Sweep& sw = sweeps[i];
      std::vector<RandomParam> vars = select(random, sub.own_params, {});
      std::vector<std::size_t> levels(vars.size(), options.l_s);
      std::vector<int> degrees(vars.size(), ds);
      if (iter > 1) {
        for (const auto& p : select(random, sub.neighbor_params, sub.own_params)) {
          vars.push_back(p);
          levels.push_back(options.l_c);
          degrees.push_back(dc);
        }
      }
      for (const auto& v : vars) sw.sigma.push_back(v.index);
      sw.basis = PolyBasis::tensor(vars, degrees, options.total_order);
      sw.grid = tensor_grid(std::move(vars), std::move(levels));
      if (iter > 1) {
        for (std::size_t j : sub.neighbors) sw.sources.push_back(project_waveform(previous[j], sw.sigma));
        for (std::size_t e : sub.interface_states) {
          const auto it = std::find(sub.neighbors.begin(), sub.neighbors.end(), decomposition.owner[e]);
          sw.source_of.push_back(static_cast<std::size_t>(it - sub.neighbors.begin()));
        }
      }
      sw.samples.assign(sub.states.size(), Matrix(static_cast<Eigen::Index>(sw.grid.size()), static_cast<Eigen::Index>(nt)));
      for (std::size_t q = 0; q < sw.grid.size(); ++q) tasks.emplace_back(i, q);
    }
    report.deterministic_runs += tasks.size();

    detail::parallel_for(tasks.size(), [&](std::size_t task) {
      const auto [i, q] = tasks[task];
      const Subsystem& sub = decomposition.subsystems[i];
      Sweep& sw = sweeps[i];
      std::vector<double> xi(model.nominal_params().data(), model.nominal_params().data() + model.param_dim());
      sw.grid.fill(q, xi);
      Matrix iface(static_cast<Eigen::Index>(sub.interface_states.size()), static_cast<Eigen::Index>(nt));
      for (std::size_t b = 0; b < sub.interface_states.size(); ++b) {
        const auto r = static_cast<Eigen::Index>(b);
        const std::size_t e = sub.interface_states[b];
        if (iter == 1) {
          iface.row(r).setConstant(model.nominal_state()(static_cast<Eigen::Index>(e)));
        } else {
          const GpcWaveform& src = sw.sources[sw.source_of[b]];
          iface.row(r) = src.evaluate(src.slot(e), xi).transpose();
        }
      }
      solve_subsystem(model, sub, iface, xi, report.times, options.dt, sw.samples, q, i, iter, q);
    });

    std::vector<GpcWaveform> current(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      GpcWaveform& wf = current[i];
      wf.subsystem = i;
      wf.times = report.times;
      wf.basis = sweeps[i].basis;
      wf.states = decomposition.subsystems[i].states;
      for (const Matrix& s : sweeps[i].samples) wf.coefficients.push_back(gpc_coefficients(s, sweeps[i].grid, wf.basis));
    }
    report.iterations = iter;
    if (iter > 1) {
      double metric = 0.0;
      for (std::size_t i = 0; i < ns; ++i) metric = std::max(metric, relative_change(current[i], previous[i]));
      report.metric_history.push_back(metric);
      previous = std::move(current);
      if (metric <= options.tol) {
        report.converged = true;
        break;
      }
    } else {
      previous = std::move(current);
    }
  }
  report.waveforms = std::move(previous);
  return report;
}

Vector PcmResult::mean(std::size_t state) const { return coefficients.at(state).row(0).transpose(); }

Vector PcmResult::variance(std::size_t state) const {
  const Matrix& c = coefficients.at(state);
  if (c.rows() <= 1) return Vector::Zero(c.cols());
  return c.bottomRows(c.rows() - 1).colwise().squaredNorm().transpose();
}

PcmResult pcm_full_grid(const NetworkModel& model, const std::vector<RandomParam>& params, std::size_t level,
                        int total_order, double t0, double horizon, double dt) {
  if (level < 1) throw std::invalid_argument("quadrature level must be at least 1");
  for (const auto& p : params) {
    if (p.index >= model.param_dim()) throw std::out_of_range("random parameter index out of range");
  }
  PcmResult result;
  result.times = uniform_time_grid(t0, horizon, dt);
  const std::size_t nt = result.times.size();
  const std::size_t n = model.state_dim();
  const CollocationGrid grid = tensor_grid(params, std::vector<std::size_t>(params.size(), level));
  result.basis = PolyBasis::tensor(params, std::vector<int>(params.size(), static_cast<int>(level) - 1), total_order);
  std::vector<Matrix> samples(n, Matrix(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(nt)));
  detail::parallel_for(grid.size(), [&](std::size_t q) {
    Vector xi = model.nominal_params();
    grid.fill(q, std::span<double>(xi.data(), static_cast<std::size_t>(xi.size())));
    const Trajectory traj = integrate(model, model.nominal_state(), xi, t0, horizon, dt);
    for (std::size_t s = 0; s < n; ++s) samples[s].row(static_cast<Eigen::Index>(q)) = traj.states.row(static_cast<Eigen::Index>(s));
  });
  result.runs = grid.size();
  for (const Matrix& s : samples) result.coefficients.push_back(gpc_coefficients(s, grid, result.basis));
  return result;
}

}  // namespace wavepwr
