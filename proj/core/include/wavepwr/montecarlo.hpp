#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavepwr/dynet.hpp"
#include "wavepwr/pwr.hpp"
#include "wavepwr/quadrature.hpp"
#include "wavepwr/sampling.hpp"

namespace wavepwr {

/// Scalar output of a trajectory: a state value or the Kuramoto order
/// parameter, tracked over time and histogrammed at a fixed time.
struct Functional {
  enum class Kind { kState, kOrderMagnitude, kOrderPhase };

  Kind kind = Kind::kState;
  std::size_t state = 0;
  double time = 0.0;

  /// "state:<i>@<t>", "order_parameter@<t>" (magnitude R) or "order_phase@<t>".
  static Functional parse(std::string_view text);
  std::string name() const;
  /// Value at one time column of an n x T state matrix.
  double evaluate(const Matrix& states, std::size_t column) const;
};

struct FunctionalStats {
  Functional functional;
  std::size_t time_index = 0;  // grid column closest to functional.time
  Vector mean;                 // over the whole time grid
  Vector variance;
  std::vector<double> values;  // per sample, at time_index
};

struct SampleStatistics {
  std::vector<double> times;
  std::size_t samples = 0;
  Matrix state_mean;  // n x T
  Matrix state_variance;
  std::vector<FunctionalStats> functionals;

  /// Standard error of the mean of a state at column k.
  double standard_error(std::size_t state, std::size_t column) const;
};

struct MonteCarloOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::kPseudo;
  double t0 = 0.0;
  double horizon = 1.0;
  double dt = 0.01;
  std::vector<Functional> functionals;
};

/// Moments of the undecomposed model over sampled parameters.
SampleStatistics mc_reference(const NetworkModel& model, const std::vector<RandomParam>& params,
                              const MonteCarloOptions& options);

/// Same estimator applied to a PWR surrogate instead of fresh integrations.
SampleStatistics surrogate_statistics(const PwrReport& report, const Vector& nominal_params,
                                      const std::vector<RandomParam>& params, const MonteCarloOptions& options);

/// Moments from an arbitrary per-sample trajectory producer (n x T output).
SampleStatistics sample_statistics(std::size_t samples, std::size_t state_dim, const std::vector<double>& times,
                                   const std::vector<Functional>& functionals,
                                   const std::function<Matrix(std::size_t)>& produce);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;

  std::size_t total() const;
  double bin_lo(std::size_t b) const;
  double bin_hi(std::size_t b) const;
};

/// Equal-width bins over [lo, hi]; values outside are clamped to the end bins.
Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins);
/// Sum over bins of |p_a - p_b| for the normalized frequencies.
double histogram_l1(const Histogram& a, const Histogram& b);

}  // namespace wavepwr
