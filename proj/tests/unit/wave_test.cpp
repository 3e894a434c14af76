#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/generators.hpp"
#include "wavepwr/partition.hpp"
#include "wavepwr/spectrum.hpp"
#include "wavepwr/wave.hpp"

namespace wavepwr {
namespace {

using testing::path_graph;
using testing::two_triangles;

WaveConfig config(double c, std::size_t t_max, std::size_t k = 1, std::uint64_t seed = 3) {
  WaveConfig cfg;
  cfg.c = c;
  cfg.t_max = t_max;
  cfg.k = k;
  cfg.seed = seed;
  return cfg;
}

TEST(WaveRun, ZeroSpeedKeepsInitialState) {
  const NormalizedLaplacian lap(two_triangles(0.2));
  const Vector u0 = wave_initial_state(6, 11);
  const WaveTrace trace = wave_iterate(lap, 0.0, 32, u0);
  for (Eigen::Index t = 0; t < 32; ++t) EXPECT_TRUE(trace.series.row(t).transpose().isApprox(u0));
}

TEST(WaveRun, FirstStepOnTwoNodeGraph) {
  const NormalizedLaplacian lap(path_graph(2));
  Vector u0(2);
  u0 << 1.0, 0.0;
  const WaveTrace trace = wave_run(lap, config(1.0, 16), u0);
  // u(1) = (I - L) u(0) = (0, 1).
  EXPECT_NEAR(trace.series(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(trace.series(0, 1), 1.0, 1e-15);
}

TEST(WaveRun, DeterministicForSeed) {
  const NormalizedLaplacian lap(two_triangles(0.2));
  const WaveTrace a = wave_run(lap, config(1.0, 200, 1, 9));
  const WaveTrace b = wave_run(lap, config(1.0, 200, 1, 9));
  const WaveTrace c = wave_run(lap, config(1.0, 200, 1, 10));
  EXPECT_EQ(a.series, b.series);
  EXPECT_NE(a.series, c.series);
  const Vector u0 = wave_initial_state(6, 9);
  EXPECT_TRUE((u0.array() >= 0.0).all() && (u0.array() <= 1.0).all());
}

TEST(WaveRun, DivergesJustAboveStabilityLimit) {
  const NormalizedLaplacian lap(path_graph(2));
  try {
    wave_run(lap, config(1.42, 200));
    FAIL() << "c = 1.42 did not diverge within 200 steps";
  } catch (const InstabilityError& e) {
    EXPECT_LE(e.step(), 200u);
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(WaveRun, StableAtBoundaryProperty) {
  // c = sqrt(2)(1 - 1e-3) stays below 1e3 max|u(0)| on several graphs.
  const double c = std::numbers::sqrt2 * (1.0 - 1e-3);
  std::vector<WeightedGraph> graphs{path_graph(2), path_graph(7), testing::cycle_graph(8), two_triangles(0.4)};
  for (const auto& g : graphs) {
    const NormalizedLaplacian lap(g);
    const Vector u0 = wave_initial_state(g.size(), 5);
    const WaveTrace trace = wave_iterate(lap, c, 10000, u0, 1e12);
    EXPECT_LT(trace.series.cwiseAbs().maxCoeff(), 1e3 * u0.cwiseAbs().maxCoeff());
  }
}

TEST(WaveRun, UnstableAboveBoundaryProperty) {
  const double c = std::numbers::sqrt2 * (1.0 + 1e-2);
  // Bipartite graphs have lambda_max = 2.
  for (const auto& g : {path_graph(2), path_graph(6), testing::cycle_graph(8)}) {
    const NormalizedLaplacian lap(g);
    EXPECT_THROW(wave_iterate(lap, c, 10000, wave_initial_state(g.size(), 5), 1e6), InstabilityError);
  }
}

TEST(WaveConfig, Validation) {
  WaveConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.c = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_NO_THROW(cfg.validate_simulation());
  cfg = WaveConfig{};
  cfg.t_max = 8;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = WaveConfig{};
  cfg.eta = 5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = WaveConfig{};
  cfg.k = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(ExtractModes, SyntheticSingleMode) {
  const std::size_t steps = 512;
  const std::vector<double> s{1, -1, -1, 1, 1};
  WaveTrace trace;
  trace.config.c = 1.0;
  trace.series.resize(steps, 5);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t i = 0; i < 5; ++i) {
      trace.series(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = std::cos(0.3 * static_cast<double>(t + 1)) * s[i];
    }
  }
  const ModeEstimate m = extract_modes(trace, 1);
  EXPECT_NEAR(m.theta[0], 0.3, 2.0 * std::numbers::pi / steps);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_GT(m.amplitude(static_cast<Eigen::Index>(i), 0) * s[i], 0.0);
}

TEST(ExtractModes, TwoNodeGraphHasQuarterTurnMode) {
  const NormalizedLaplacian lap(path_graph(2));
  const WaveTrace trace = wave_run(lap, config(1.0, 256));
  const ModeEstimate m = extract_modes(trace, 1);
  EXPECT_NEAR(m.theta[0], std::numbers::pi / 2.0, 2.0 * std::numbers::pi / 256.0);
  EXPECT_NEAR(m.lambda[0], 2.0, 0.05);
  EXPECT_LT(m.amplitude(0, 0) * m.amplitude(1, 0), 0.0);
}

TEST(ExtractModes, TooShortForEtaCycles) {
  const NormalizedLaplacian lap(path_graph(20));
  const WaveTrace trace = wave_run(lap, config(1.0, 32));
  EXPECT_THROW(extract_modes(trace, 1), ResolutionError);
}

TEST(ThetaLambda, RoundTrip) {
  for (double lambda : {0.01, 0.3, 1.0, 1.7, 2.0}) {
    for (double c : {0.5, 1.0, std::numbers::sqrt2}) {
      EXPECT_NEAR(lambda_from_theta(theta_from_lambda(lambda, c), c), lambda, 1e-12);
    }
  }
  EXPECT_NEAR(theta_from_lambda(2.0, 1.0), std::numbers::pi / 2.0, 1e-15);
}

TEST(ConvergenceTime, Formula) {
  // ceil(8 * 2 pi / arccos(e^-1)) + 100 = 143 (evaluated independently).
  EXPECT_EQ(estimate_convergence_time(1.0, 100, 8.0), 143u);
  EXPECT_EQ(estimate_convergence_time(5.0, 50, 8.0), 133u);
  // tau -> 0: arccos(0) = pi/2, so 4 eta + n.
  const std::size_t fast = estimate_convergence_time(1e-9, 10, 8.0);
  EXPECT_GE(fast, 42u);
  EXPECT_LE(fast, 43u);
  std::size_t prev = 0;
  for (double tau : {0.5, 1.0, 2.0, 5.0, 20.0}) {
    const std::size_t t = estimate_convergence_time(tau, 10, 8.0);
    EXPECT_GT(t, prev);
    prev = t;
  }
  EXPECT_THROW(estimate_convergence_time(0.0, 10, 8.0), std::invalid_argument);
}

TEST(ClusterByWave, DisjointTriangles) {
  const auto a = cluster_by_wave(NormalizedLaplacian(two_triangles(0.0)), config(1.0, 0));
  EXPECT_TRUE(same_partition(a.labels, std::vector<std::uint64_t>{0, 0, 0, 1, 1, 1}));
}

TEST(ClusterByWave, PlantedTwoCommunitySignsMatchFiedler) {
  const PlantedGraph g = planted_partition({50, 50}, 0.3, 0.02, 4);
  const NormalizedLaplacian lap(WeightedGraph::from_edges(g.n, g.edges));
  const WaveClusterResult wr = cluster_by_wave_detailed(lap, config(1.0, 0));
  const SpectrumReport rep = dense_spectrum(lap, 2);
  std::size_t agree = 0;
  for (Eigen::Index i = 0; i < 100; ++i) {
    if ((wr.modes.amplitude(i, 0) >= 0) == (rep.eigenvectors(i, 1) >= 0)) ++agree;
  }
  EXPECT_GE(std::max(agree, 100 - agree), 99u);
}

TEST(ClusterByWave, FourBlocksWithTwoModes) {
  // Blocks in a chain: modes 2 and 3 are nondegenerate and their sign code separates all four.
  Matrix prob = Matrix::Zero(4, 4);
  for (int b = 0; b < 4; ++b) prob(b, b) = 0.4;
  for (int b = 0; b + 1 < 4; ++b) prob(b, b + 1) = prob(b + 1, b) = 0.02;
  const PlantedGraph g = stochastic_block_model({30, 30, 30, 30}, prob, 8);
  const NormalizedLaplacian lap(WeightedGraph::from_edges(g.n, g.edges));
  const auto wave = cluster_by_wave(lap, config(1.0, 0, 2));
  const auto oracle = oracle_cluster(lap, 2);
  EXPECT_TRUE(same_partition(wave.labels, oracle.labels));
  EXPECT_EQ(wave.cluster_count(), 4u);
  EXPECT_DOUBLE_EQ(partition_agreement(wave.labels, g.labels), 1.0);
}

}  // namespace
}  // namespace wavepwr
