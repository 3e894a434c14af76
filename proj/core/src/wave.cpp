#include "wavepwr/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/QR>

#include "fft.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/rng.hpp"

namespace wavepwr {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPeakProminence = 5.0;  // multiples of the median spectral magnitude
constexpr std::size_t kAutoInitialSteps = 1024;
constexpr std::size_t kAutoMaxSteps = std::size_t{1} << 22;

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) {
    w[t] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(t) / static_cast<double>(n)));
  }
  return w;
}

// Shared magnitude spectrum: sum over nodes of |FFT(window * (u_i - mean_i))|.
std::vector<double> pooled_spectrum(const WaveTrace& trace) {
  const std::size_t steps = trace.steps();
  detail::RealFft fft(steps);
  const auto window = hann_window(steps);
  double wsum = 0.0;
  for (double w : window) wsum += w;

  std::vector<double> pooled(fft.bins(), 0.0);
  std::vector<double> buf(steps);
  for (std::size_t i = 0; i < trace.nodes(); ++i) {
    const auto col = trace.series.col(static_cast<Eigen::Index>(i));
    double mean = 0.0;
    for (std::size_t t = 0; t < steps; ++t) mean += window[t] * col(static_cast<Eigen::Index>(t));
    mean /= wsum;
    for (std::size_t t = 0; t < steps; ++t) {
      buf[t] = window[t] * (col(static_cast<Eigen::Index>(t)) - mean);
    }
    const auto spec = fft.forward(buf);
    for (std::size_t b = 0; b < spec.size(); ++b) pooled[b] += std::abs(spec[b]);
  }
  return pooled;
}

struct Peak {
  std::size_t bin;
  double position;  // fractional bin after interpolation
};

std::vector<Peak> find_peaks(const std::vector<double>& s) {
  const std::size_t bins = s.size();
  std::vector<Peak> peaks;
  if (bins < 5) return peaks;

  // Bins 0 and 1 lie inside the window's DC main lobe.
  std::vector<double> body(s.begin() + 1, s.end());
  std::nth_element(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(body.size() / 2), body.end());
  const double median = body[body.size() / 2];
  const double threshold = kPeakProminence * median;

  for (std::size_t b = 2; b + 1 < bins; ++b) {
    if (!(s[b] > s[b - 1] && s[b] >= s[b + 1])) continue;
    double left_min = s[b];
    for (std::size_t j = b; j-- > 1;) {
      if (s[j] > s[b]) break;
      left_min = std::min(left_min, s[j]);
    }
    double right_min = s[b];
    for (std::size_t j = b + 1; j < bins; ++j) {
      if (s[j] > s[b]) break;
      right_min = std::min(right_min, s[j]);
    }
    const double prominence = s[b] - std::max(left_min, right_min);
    if (prominence < threshold) continue;

    const double a = std::log(std::max(s[b - 1], 1e-300));
    const double m = std::log(std::max(s[b], 1e-300));
    const double c = std::log(std::max(s[b + 1], 1e-300));
    const double denom = a - 2.0 * m + c;
    double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    delta = std::clamp(delta, -0.5, 0.5);
    peaks.push_back({b, static_cast<double>(b) + delta});
  }
  return peaks;
}

void check_finite_growth(const Vector& u, std::size_t step, double limit) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double v = u(i);
    if (!std::isfinite(v) || std::abs(v) > limit) throw InstabilityError(step);
  }
}

std::size_t auto_steps(const NormalizedLaplacian& laplacian, const WaveConfig& config,
                       const Vector& initial, std::size_t modes, WaveTrace& trace,
                       ModeEstimate& estimate) {
  std::size_t steps = std::max<std::size_t>(kAutoInitialSteps, 16);
  while (true) {
    trace = wave_iterate(laplacian, config.c, steps, initial, config.blowup_factor);
    trace.config = config;
    trace.config.t_max = steps;
    try {
      estimate = extract_modes(trace, modes);
    } catch (const ResolutionError&) {
      if (steps >= kAutoMaxSteps) throw;
      steps *= 2;
      continue;
    }
    // Mixing time implied by the lowest resolved mode: exp(-1/tau) = cos(theta).
    const double cos_theta = std::cos(estimate.theta.front());
    const double tau = cos_theta > 0.0 ? -1.0 / std::log(cos_theta) : 1e-12;
    const std::size_t needed = estimate_convergence_time(tau, laplacian.size(), config.eta);
    if (needed <= steps) return steps;
    if (needed > kAutoMaxSteps) {
      throw ResolutionError("automatic step count exceeds limit; supply t_max");
    }
    steps = needed;
  }
}

}  // namespace

void WaveConfig::validate() const {
  if (c > std::numbers::sqrt2) throw std::invalid_argument("wave speed c must satisfy 0 < c <= sqrt(2)");
  validate_simulation();
}

void WaveConfig::validate_simulation() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("wave speed c must be positive");
  if (t_max != 0 && t_max < 16) throw std::invalid_argument("t_max must be at least 16");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (eta < 6.0) throw std::invalid_argument("eta must be at least 6");
  if (!(blowup_factor > 1.0)) throw std::invalid_argument("blowup_factor must exceed 1");
}

InstabilityError::InstabilityError(std::size_t step)
    : Error("wave iteration unstable at step " + std::to_string(step)), step_(step) {}

double theta_from_lambda(double lambda, double c) {
  return std::acos(std::clamp(1.0 - c * c * lambda / 2.0, -1.0, 1.0));
}

double lambda_from_theta(double theta, double c) {
  return 2.0 * (1.0 - std::cos(theta)) / (c * c);
}

Vector wave_initial_state(std::size_t n, std::uint64_t seed) {
  const std::uint64_t key = derive_seed(seed, "wave-init");
  Vector u(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) u(static_cast<Eigen::Index>(i)) = counter_uniform(key, i);
  return u;
}

WaveTrace wave_iterate(const NormalizedLaplacian& laplacian, double c, std::size_t t_max,
                       const Vector& initial, double blowup_factor) {
  const auto n = static_cast<Eigen::Index>(laplacian.size());
  if (initial.size() != n) throw std::invalid_argument("initial state size mismatch");
  const double scale = initial.cwiseAbs().maxCoeff();
  const double limit = blowup_factor * (scale > 0.0 ? scale : 1.0);
  const double c2 = c * c;
  const SparseRowMatrix& l = laplacian.sparse();

  WaveTrace trace;
  trace.initial = initial;
  trace.config.c = c;
  trace.config.t_max = t_max;
  trace.series.resize(static_cast<Eigen::Index>(t_max), n);

  // Each step reads only the two previous snapshots.
  Vector older = initial;
  Vector prev = initial;
  Vector next(n);
  for (std::size_t t = 1; t <= t_max; ++t) {
    next.noalias() = l * prev;
    next = 2.0 * prev - older - c2 * next;
    check_finite_growth(next, t, limit);
    trace.series.row(static_cast<Eigen::Index>(t - 1)) = next.transpose();
    std::swap(older, prev);
    std::swap(prev, next);
  }
  return trace;
}

WaveTrace wave_run(const NormalizedLaplacian& laplacian, const WaveConfig& config,
                   const Vector& initial) {
  config.validate_simulation();
  if (config.t_max == 0) throw std::invalid_argument("wave_run needs an explicit t_max");
  WaveTrace trace =
      wave_iterate(laplacian, config.c, config.t_max, initial, config.blowup_factor);
  trace.config = config;
  return trace;
}

WaveTrace wave_run(const NormalizedLaplacian& laplacian, const WaveConfig& config) {
  return wave_run(laplacian, config, wave_initial_state(laplacian.size(), config.seed));
}

Matrix magnitude_spectra(const WaveTrace& trace) {
  const std::size_t steps = trace.steps();
  detail::RealFft fft(steps);
  const auto window = hann_window(steps);
  Matrix out(static_cast<Eigen::Index>(fft.bins()), static_cast<Eigen::Index>(trace.nodes()));
  std::vector<double> buf(steps);
  for (std::size_t i = 0; i < trace.nodes(); ++i) {
    for (std::size_t t = 0; t < steps; ++t) {
      buf[t] = window[t] * trace.series(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i));
    }
    const auto spec = fft.forward(buf);
    for (std::size_t b = 0; b < spec.size(); ++b) {
      out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i)) = std::abs(spec[b]);
    }
  }
  return out;
}

ModeEstimate extract_modes(const WaveTrace& trace, std::size_t k) {
  if (k < 1) throw std::invalid_argument("extract_modes: k must be at least 1");
  const std::size_t steps = trace.steps();
  if (steps < 16) throw ResolutionError("trace too short; increase t_max");

  const auto peaks = find_peaks(pooled_spectrum(trace));
  if (peaks.size() < k) {
    std::ostringstream os;
    os << "insufficient resolution: found " << peaks.size() << " spectral peaks, need " << k
       << "; increase t_max beyond " << steps;
    throw ResolutionError(os.str());
  }

  ModeEstimate est;
  const double c = trace.config.c;
  for (std::size_t j = 0; j < k; ++j) {
    const double theta = kTwoPi * peaks[j].position / static_cast<double>(steps);
    est.theta.push_back(theta);
    est.lambda.push_back(c > 0.0 ? lambda_from_theta(theta, c) : 0.0);
  }
  const double cycles = est.theta.front() * static_cast<double>(steps) / kTwoPi;
  if (cycles < trace.config.eta) {
    std::ostringstream os;
    os << "insufficient resolution: lowest mode completes " << cycles << " cycles, need "
       << trace.config.eta << "; increase t_max beyond " << steps;
    throw ResolutionError(os.str());
  }

  // Joint least squares on {1, cos(theta_j t), sin(theta_j t)}, t = 1..T,
  // Hann-weighted so unfitted modes leak only through the window sidelobes.
  const auto cols = static_cast<Eigen::Index>(2 * k + 1);
  const std::vector<double> window = hann_window(steps);
  Matrix design(static_cast<Eigen::Index>(steps), cols);
  Matrix weighted = trace.series;
  for (std::size_t t = 0; t < steps; ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    const double time = static_cast<double>(t + 1);
    const double sw = std::sqrt(window[t]);
    design(row, 0) = sw;
    for (std::size_t j = 0; j < k; ++j) {
      design(row, static_cast<Eigen::Index>(2 * j + 1)) = sw * std::cos(est.theta[j] * time);
      design(row, static_cast<Eigen::Index>(2 * j + 2)) = sw * std::sin(est.theta[j] * time);
    }
    weighted.row(row) *= sw;
  }
  const Matrix coef = design.colPivHouseholderQr().solve(weighted);

  const auto n = static_cast<Eigen::Index>(trace.nodes());
  est.amplitude.resize(n, static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const auto ca = coef.row(static_cast<Eigen::Index>(2 * j + 1));
    const auto sa = coef.row(static_cast<Eigen::Index>(2 * j + 2));
    Eigen::Index ref = 0;
    (ca.array().square() + sa.array().square()).maxCoeff(&ref);
    const double norm = std::hypot(ca(ref), sa(ref));
    for (Eigen::Index i = 0; i < n; ++i) {
      est.amplitude(i, static_cast<Eigen::Index>(j)) =
          norm > 0.0 ? (ca(i) * ca(ref) + sa(i) * sa(ref)) / norm : 0.0;
    }
  }
  return est;
}

WaveClusterResult cluster_by_wave_detailed(const NormalizedLaplacian& laplacian,
                                           const WaveConfig& config) {
  config.validate();
  const std::size_t n = laplacian.size();
  const auto components = connected_components(laplacian);
  const std::size_t n_components = *std::max_element(components.begin(), components.end()) + 1;

  // Extra null-space modes beyond the constant one are component
  // indicators; they carry no oscillation, so their bits come from the
  // component structure. The rest come from the spectrum.
  const std::size_t null_modes = std::min(config.k, n_components - 1);
  const std::size_t wave_modes = config.k - null_modes;

  WaveClusterResult result;
  result.components = n_components;
  if (wave_modes > 0) {
    const Vector initial = wave_initial_state(n, config.seed);
    WaveTrace trace;
    if (config.t_max == 0) {
      result.t_max = auto_steps(laplacian, config, initial, wave_modes, trace, result.modes);
    } else {
      trace = wave_run(laplacian, config, initial);
      result.modes = extract_modes(trace, wave_modes);
      result.t_max = config.t_max;
    }
  }

  Matrix signs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(config.k));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < null_modes; ++j) {
      signs(row, static_cast<Eigen::Index>(j)) = ((components[i] >> j) & 1U) ? 1.0 : -1.0;
    }
    for (std::size_t j = 0; j < wave_modes; ++j) {
      signs(row, static_cast<Eigen::Index>(null_modes + j)) =
          result.modes.amplitude(row, static_cast<Eigen::Index>(j));
    }
  }
  result.assignment = sign_cluster(signs);
  return result;
}

ClusterAssignment cluster_by_wave(const NormalizedLaplacian& laplacian, const WaveConfig& config) {
  return cluster_by_wave_detailed(laplacian, config).assignment;
}

std::size_t estimate_convergence_time(double tau, std::size_t n, double eta) {
  if (!(tau > 0.0)) throw std::invalid_argument("mixing time must be positive");
  const double angle = std::acos(std::exp(-1.0 / tau));
  return static_cast<std::size_t>(std::ceil(eta * kTwoPi / angle)) + n;
}

}  // namespace wavepwr
