#include "wavepwr/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "wavepwr/error.hpp"

namespace wavepwr {
namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

// Welford accumulator over matrices, merged in a fixed order.
struct Moments {
  double count = 0.0;
  Matrix mean;
  Matrix m2;

  void add(const Matrix& x) {
    if (count == 0.0) {
      mean = Matrix::Zero(x.rows(), x.cols());
      m2 = Matrix::Zero(x.rows(), x.cols());
    }
    count += 1.0;
    const Matrix delta = x - mean;
    mean += delta / count;
    m2 += delta.cwiseProduct(x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const Matrix delta = o.mean - mean;
    mean += delta * (o.count / total);
    m2 += o.m2 + delta.cwiseProduct(delta) * (count * o.count / total);
    count = total;
  }

  Matrix variance() const {
    if (count < 2.0) return Matrix::Zero(mean.rows(), mean.cols());
    return m2 / (count - 1.0);
  }
};

constexpr std::size_t kChunk = 64;

}  // namespace

SampleError::SampleError(std::vector<std::size_t> failed)
    : Error([&] {
        std::ostringstream os;
        os << failed.size() << " sample(s) failed to integrate:";
        for (std::size_t i = 0; i < std::min<std::size_t>(failed.size(), 10); ++i) os << ' ' << failed[i];
        if (failed.size() > 10) os << " ...";
        return os.str();
      }()),
      failed_(std::move(failed)) {}

Functional Functional::parse(std::string_view text) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos) throw std::invalid_argument("functional '" + std::string(text) + "' needs @<time>");
  Functional f;
  f.time = parse_double(text.substr(at + 1), "functional time");
  const std::string_view head = text.substr(0, at);
  if (head == "order_parameter") {
    f.kind = Kind::kOrderMagnitude;
  } else if (head == "order_phase") {
    f.kind = Kind::kOrderPhase;
  } else if (head.starts_with("state:")) {
    f.kind = Kind::kState;
    const std::string_view idx = head.substr(6);
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), f.state);
    if (ec != std::errc() || ptr != idx.data() + idx.size()) {
      throw std::invalid_argument("invalid state index in functional '" + std::string(text) + "'");
    }
  } else {
    throw std::invalid_argument("unknown functional '" + std::string(text) + "'");
  }
  return f;
}

std::string Functional::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kState:
      os << "state:" << state;
      break;
    case Kind::kOrderMagnitude:
      os << "order_parameter";
      break;
    case Kind::kOrderPhase:
      os << "order_phase";
      break;
  }
  os << '@' << time;
  return os.str();
}

double Functional::evaluate(const Matrix& states, std::size_t column) const {
  const auto c = static_cast<Eigen::Index>(column);
  if (kind == Kind::kState) {
    if (state >= static_cast<std::size_t>(states.rows())) throw std::out_of_range("functional state index out of range");
    return states(static_cast<Eigen::Index>(state), c);
  }
  const Vector col = states.col(c);
  const auto [r, phi] = order_parameter(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
  return kind == Kind::kOrderMagnitude ? r : phi;
}

double SampleStatistics::standard_error(std::size_t state, std::size_t column) const {
  if (samples == 0) return 0.0;
  return std::sqrt(state_variance(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(column)) /
                   static_cast<double>(samples));
}

SampleStatistics sample_statistics(std::size_t samples, std::size_t state_dim, const std::vector<double>& times,
                                   const std::vector<Functional>& functionals,
                                   const std::function<Matrix(std::size_t)>& produce) {
  if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
  const std::size_t nt = times.size();
  const std::size_t nf = functionals.size();
  SampleStatistics stats;
  stats.times = times;
  stats.samples = samples;
  for (const auto& f : functionals) {
    FunctionalStats fs;
    fs.functional = f;
    if (f.time < times.front() - 1e-12 || f.time > times.back() + 1e-12) {
      throw std::invalid_argument("functional time outside the integration horizon");
    }
    const auto it = std::min_element(times.begin(), times.end(), [&](double a, double b) {
      return std::abs(a - f.time) < std::abs(b - f.time);
    });
    fs.time_index = static_cast<std::size_t>(it - times.begin());
    fs.values.assign(samples, 0.0);
    stats.functionals.push_back(std::move(fs));
  }

  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> state_moments(chunks);
  std::vector<Moments> func_moments(chunks);
  std::vector<std::vector<std::size_t>> failures(chunks);
  detail::parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t s = c * kChunk; s < end; ++s) {
      Matrix x;
      try {
        x = produce(s);
      } catch (const IntegrationError&) {
        failures[c].push_back(s);
        continue;
      }
      state_moments[c].add(x);
      if (nf == 0) continue;
      Matrix fv(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nt));
      for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t k = 0; k < nt; ++k) {
          fv(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(k)) = functionals[f].evaluate(x, k);
        }
        stats.functionals[f].values[s] =
            fv(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(stats.functionals[f].time_index));
      }
      func_moments[c].add(fv);
    }
  });
  std::vector<std::size_t> failed;
  for (const auto& f : failures) failed.insert(failed.end(), f.begin(), f.end());
  if (!failed.empty()) throw SampleError(std::move(failed));

  Moments total_states;
  Moments total_funcs;
  for (std::size_t c = 0; c < chunks; ++c) {
    total_states.merge(state_moments[c]);
    total_funcs.merge(func_moments[c]);
  }
  if (static_cast<std::size_t>(total_states.mean.rows()) != state_dim) {
    throw std::logic_error("sample producer returned the wrong state dimension");
  }
  stats.state_mean = total_states.mean;
  stats.state_variance = total_states.variance();
  if (nf > 0) {
    const Matrix fvar = total_funcs.variance();
    for (std::size_t f = 0; f < nf; ++f) {
      stats.functionals[f].mean = total_funcs.mean.row(static_cast<Eigen::Index>(f)).transpose();
      stats.functionals[f].variance = fvar.row(static_cast<Eigen::Index>(f)).transpose();
    }
  }
  return stats;
}

SampleStatistics mc_reference(const NetworkModel& model, const std::vector<RandomParam>& params,
                              const MonteCarloOptions& options) {
  const ParameterSampler sampler(params, model.nominal_params(), options.sampler, options.seed);
  const auto times = uniform_time_grid(options.t0, options.horizon, options.dt);
  return sample_statistics(options.samples, model.state_dim(), times, options.functionals, [&](std::size_t s) {
    Vector xi(model.nominal_params().size());
    sampler.sample(s, std::span<double>(xi.data(), static_cast<std::size_t>(xi.size())));
    return integrate(model, model.nominal_state(), xi, options.t0, options.horizon, options.dt).states;
  });
}

SampleStatistics surrogate_statistics(const PwrReport& report, const Vector& nominal_params,
                                      const std::vector<RandomParam>& params, const MonteCarloOptions& options) {
  const ParameterSampler sampler(params, nominal_params, options.sampler, options.seed);
  return sample_statistics(options.samples, report.owner.size(), report.times, options.functionals,
                           [&](std::size_t s) {
                             Vector xi(nominal_params.size());
                             sampler.sample(s, std::span<double>(xi.data(), static_cast<std::size_t>(xi.size())));
                             return report.evaluate(std::span<const double>(xi.data(), static_cast<std::size_t>(xi.size())));
                           });
}

std::size_t Histogram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double Histogram::bin_lo(std::size_t b) const {
  return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(counts.size());
}

double Histogram::bin_hi(std::size_t b) const { return bin_lo(b + 1); }

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (!(hi > lo)) throw std::invalid_argument("histogram range needs hi > lo");
  Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++h.counts[b];
  }
  return h;
}

double histogram_l1(const Histogram& a, const Histogram& b) {
  if (a.counts.size() != b.counts.size() || a.lo != b.lo || a.hi != b.hi) {
    throw std::invalid_argument("histograms have different bins");
  }
  const double ta = static_cast<double>(std::max<std::size_t>(1, a.total()));
  const double tb = static_cast<double>(std::max<std::size_t>(1, b.total()));
  double d = 0.0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    d += std::abs(static_cast<double>(a.counts[i]) / ta - static_cast<double>(b.counts[i]) / tb);
  }
  return d;
}

}  // namespace wavepwr
