#include <gtest/gtest.h>

#include <cmath>

#include "wavepwr/dynet.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/models.hpp"
#include "wavepwr/montecarlo.hpp"
#include "wavepwr/pwr.hpp"

namespace wavepwr {
namespace {

constexpr double kDecayMean = 0.23254415793482963;  // e^-1 - e^-2

NetworkModel decay_model() {
  return linear_builder(Matrix::Zero(1, 1), Vector::Constant(1, 1.5), Vector::Ones(1));
}

NetworkModel linear_pair(double coupling) {
  Matrix a(2, 2);
  a << 0.0, coupling, coupling, 0.0;
  Vector x0(2);
  x0 << 1.0, 0.5;
  return linear_builder(a, Vector::Constant(2, 1.5), x0);
}

std::vector<std::vector<std::size_t>> singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = {i};
  return c;
}

std::vector<RandomParam> uniform_decays(std::size_t n) {
  std::vector<RandomParam> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({i, Distribution::uniform(1.0, 2.0)});
  return p;
}

double max_rel(const Vector& a, const Vector& b) {
  return ((a - b).cwiseAbs().array() / b.cwiseAbs().array().max(1e-12)).maxCoeff();
}

TEST(Pwr, AnalyticDecayMean) {
  const NetworkModel m = decay_model();
  const PwrReport r = pwr_solve(m, decompose(m, singletons(1)), uniform_decays(1), PwrOptions{});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.mean(0)[static_cast<Eigen::Index>(r.times.size() - 1)], kDecayMean, 1e-6);
  // Var = (e^-2 - e^-4) / 2 - mean^2.
  const double var = (std::exp(-2.0) - std::exp(-4.0)) / 2.0 - kDecayMean * kDecayMean;
  EXPECT_NEAR(r.variance(0)[static_cast<Eigen::Index>(r.times.size() - 1)], var, 1e-6);
}

TEST(Pwr, ZeroCouplingConvergesImmediately) {
  const NetworkModel m = linear_builder(Matrix::Zero(3, 3), Vector::Constant(3, 1.5), Vector::Ones(3));
  const PwrReport r = pwr_solve(m, decompose(m, singletons(3)), uniform_decays(3), PwrOptions{});
  ASSERT_FALSE(r.metric_history.empty());
  EXPECT_LE(r.metric_history.front(), 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 2u);
}

TEST(Pwr, LinearPairMatchesFullGrid) {
  const NetworkModel m = linear_pair(0.1);
  PwrOptions opt;
  opt.max_iterations = 6;
  const PwrReport r = pwr_solve(m, decompose(m, singletons(2)), uniform_decays(2), opt);
  const PcmResult ref = pcm_full_grid(m, uniform_decays(2), 5, 5, 0.0, 1.0, 0.01);
  EXPECT_LE(r.iterations, 6u);
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_LE(max_rel(r.mean(s), ref.mean(s)), 1e-4) << s;
    const Eigen::Index last = static_cast<Eigen::Index>(r.times.size() - 1);
    // The neighbour's parameter is carried at degree l_c - 1 only.
    EXPECT_NEAR(r.variance(s)[last], ref.variance(s)[last], 1e-3 * ref.variance(s)[last]) << s;
  }
}

TEST(Pwr, MetricDecreasesFromThirdIteration) {
  const NetworkModel m = linear_pair(0.3);
  PwrOptions opt;
  opt.tol = 0.0;
  opt.max_iterations = 6;
  const PwrReport r = pwr_solve(m, decompose(m, singletons(2)), uniform_decays(2), opt);
  EXPECT_FALSE(r.converged);
  ASSERT_EQ(r.metric_history.size(), 5u);
  for (std::size_t k = 1; k < r.metric_history.size(); ++k) {
    if (r.metric_history[k - 1] < 1e-13) break;
    EXPECT_LT(r.metric_history[k], r.metric_history[k - 1]) << k;
  }
}

TEST(Pwr, SingleSubsystemEqualsFullGrid) {
  const NetworkModel m = linear_pair(0.4);
  PwrOptions opt;
  opt.l_s = 4;
  opt.total_order = 3;
  const PwrReport r = pwr_solve(m, decompose(m, std::vector<std::vector<std::size_t>>{{0, 1}}), uniform_decays(2), opt);
  const PcmResult ref = pcm_full_grid(m, uniform_decays(2), 4, 3, 0.0, 1.0, 0.01);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.deterministic_runs, 2 * ref.runs);
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_LE((r.mean(s) - ref.mean(s)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((r.variance(s) - ref.variance(s)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Pwr, DivergenceReportsLocation) {
  // x' = xi x^2 from 1 blows up at t = 1/xi, inside the window for xi > 1.
  NetworkModel m(1, [](std::size_t, std::span<const double> x, std::span<const double> xi, double) {
    return xi[0] * x[0] * x[0];
  }, {{0}}, Vector::Ones(1), Vector::Ones(1));
  PwrOptions opt;
  opt.horizon = 2.0;
  try {
    pwr_solve(m, decompose(m, singletons(1)), {{0, Distribution::uniform(0.2, 2.0)}}, opt);
    FAIL() << "expected PwrError";
  } catch (const PwrError& e) {
    EXPECT_EQ(e.subsystem(), 0u);
    EXPECT_EQ(e.iteration(), 1u);
    EXPECT_NE(std::string(e.what()).find("grid point"), std::string::npos);
  }
}

TEST(Pwr, OptionValidation) {
  PwrOptions opt;
  opt.l_s = 0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
  opt = PwrOptions{};
  opt.max_iterations = 0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
}

TEST(MonteCarlo, DecayMeanWithinThreeStandardErrors) {
  const NetworkModel m = decay_model();
  MonteCarloOptions opt;
  opt.samples = 100000;
  opt.seed = 11;
  const SampleStatistics s = mc_reference(m, uniform_decays(1), opt);
  const std::size_t last = s.times.size() - 1;
  const double se = s.standard_error(0, last);
  EXPECT_GT(se, 0.0);
  EXPECT_LE(std::abs(s.state_mean(0, static_cast<Eigen::Index>(last)) - kDecayMean), 3.0 * se);
}

TEST(MonteCarlo, SeededRunsRepeat) {
  const NetworkModel m = linear_pair(0.2);
  MonteCarloOptions opt;
  opt.samples = 300;
  opt.seed = 5;
  opt.functionals = {Functional::parse("state:1@0.5")};
  const SampleStatistics a = mc_reference(m, uniform_decays(2), opt);
  const SampleStatistics b = mc_reference(m, uniform_decays(2), opt);
  EXPECT_EQ(a.state_mean, b.state_mean);
  EXPECT_EQ(a.state_variance, b.state_variance);
  EXPECT_EQ(a.functionals[0].values, b.functionals[0].values);
  EXPECT_EQ(a.functionals[0].time_index, 50u);
  opt.seed = 6;
  EXPECT_NE(mc_reference(m, uniform_decays(2), opt).state_mean, a.state_mean);
}

TEST(MonteCarlo, ConstantModelHasZeroVariance) {
  NetworkModel m(2, [](std::size_t, std::span<const double>, std::span<const double>, double) { return 0.0; },
                 {{0}, {1}}, Vector::Ones(2), Vector::Constant(2, 3.0));
  MonteCarloOptions opt;
  opt.samples = 200;
  opt.sampler = SamplerKind::kSobol;
  const SampleStatistics s = mc_reference(m, uniform_decays(2), opt);
  EXPECT_TRUE((s.state_mean.array() == 3.0).all());
  EXPECT_TRUE((s.state_variance.array() == 0.0).all());
}

TEST(MonteCarlo, FailedSamplesAreListed) {
  NetworkModel m(1, [](std::size_t, std::span<const double> x, std::span<const double> xi, double) {
    return xi[0] * x[0] * x[0];
  }, {{0}}, Vector::Ones(1), Vector::Ones(1));
  MonteCarloOptions opt;
  opt.samples = 64;
  opt.horizon = 2.0;
  opt.seed = 1;
  try {
    mc_reference(m, {{0, Distribution::uniform(0.0, 1.0)}}, opt);
    FAIL() << "expected SampleError";
  } catch (const SampleError& e) {
    EXPECT_FALSE(e.failed_samples().empty());
    EXPECT_LT(e.failed_samples().size(), 64u);
    EXPECT_TRUE(std::is_sorted(e.failed_samples().begin(), e.failed_samples().end()));
  }
}

TEST(Functional, ParseAndEvaluate) {
  const Functional f = Functional::parse("state:3@0.25");
  EXPECT_EQ(f.kind, Functional::Kind::kState);
  EXPECT_EQ(f.state, 3u);
  EXPECT_DOUBLE_EQ(f.time, 0.25);
  EXPECT_EQ(Functional::parse("order_parameter@1").kind, Functional::Kind::kOrderMagnitude);
  EXPECT_EQ(Functional::parse("order_phase@1").kind, Functional::Kind::kOrderPhase);
  EXPECT_THROW(Functional::parse("state:x@1"), std::invalid_argument);
  EXPECT_THROW(Functional::parse("energy@1"), std::invalid_argument);
  Matrix states(2, 1);
  states << 0.0, 0.0;
  EXPECT_NEAR(Functional::parse("order_parameter@0").evaluate(states, 0), 1.0, 1e-15);
}

TEST(Histogram, BinsAndDistance) {
  const std::vector<double> a{0.05, 0.15, 0.15, 0.95, 2.0, std::nan("")};
  const Histogram h = make_histogram(a, 0.0, 1.0, 10);
  EXPECT_EQ(h.total(), 5u);
  EXPECT_EQ(h.counts[1], 2u);
  EXPECT_EQ(h.counts[9], 2u);
  EXPECT_DOUBLE_EQ(h.bin_lo(1), 0.1);
  EXPECT_DOUBLE_EQ(histogram_l1(h, h), 0.0);
  const std::vector<double> b{0.55};
  EXPECT_DOUBLE_EQ(histogram_l1(h, make_histogram(b, 0.0, 1.0, 10)), 2.0);
}

}  // namespace
}  // namespace wavepwr
