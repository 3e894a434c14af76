#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "wavepwr/config.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/graph.hpp"
#include "wavepwr/io.hpp"
#include "wavepwr/partition.hpp"
#include "wavepwr/rng.hpp"
#include "wavepwr/spectrum.hpp"

namespace wavepwr {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;
using testing::two_triangles;

TEST(WeightedGraph, RejectsMalformedInput) {
  Matrix asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(WeightedGraph{asym}, GraphError);

  Matrix negative(2, 2);
  negative << 0, -1, -1, 0;
  EXPECT_THROW(WeightedGraph{negative}, GraphError);

  Matrix isolated = Matrix::Zero(3, 3);
  isolated(0, 1) = isolated(1, 0) = 1.0;
  try {
    WeightedGraph g(isolated);
    FAIL() << "isolated node accepted";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("disconnected node 2"), std::string::npos);
  }

  Matrix diag = Matrix::Zero(2, 2);
  diag << 1, 1, 1, 0;
  EXPECT_THROW(WeightedGraph{diag}, GraphError);
  EXPECT_THROW(WeightedGraph::from_edges(2, std::vector<Edge>{{0, 0, 1.0}}), GraphError);
}

TEST(NormalizedLaplacian, RowsSumToZeroAndDiagonalIsOne) {
  const auto g = two_triangles(0.5);
  const Matrix l = NormalizedLaplacian(g).dense();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    EXPECT_NEAR(l.row(i).sum(), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(l(i, i), 1.0);
  }
}

TEST(NormalizedLaplacian, TwoNodeGraph) {
  const auto l = NormalizedLaplacian(path_graph(2)).dense();
  Matrix expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(l.isApprox(expected));
}

TEST(DenseSpectrum, KnownGraphs) {
  // Path on 3 nodes: 0, 1, 2.
  auto ev = dense_eigenvalues(NormalizedLaplacian(path_graph(3)));
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  EXPECT_NEAR(ev[2], 2.0, 1e-12);

  // Cycle C_n: 1 - cos(2 pi k / n).
  ev = dense_eigenvalues(NormalizedLaplacian(cycle_graph(6)));
  std::vector<double> expected;
  for (int k = 0; k < 6; ++k) expected.push_back(1.0 - std::cos(2.0 * std::numbers::pi * k / 6.0));
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-12);

  // Complete graph K_n: 0 and n/(n-1) with multiplicity n-1.
  ev = dense_eigenvalues(NormalizedLaplacian(complete_graph(5)));
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR(ev[i], 1.25, 1e-12);
}

TEST(DenseSpectrum, EigenvectorsAreRightEigenvectorsOfL) {
  const NormalizedLaplacian lap(two_triangles(0.3));
  const SpectrumReport rep = dense_spectrum(lap, 6);
  const Matrix l = lap.dense();
  for (std::size_t j = 0; j < 6; ++j) {
    const Vector v = rep.eigenvectors.col(static_cast<Eigen::Index>(j));
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT((l * v - rep.eigenvalues[j] * v).norm(), 1e-10);
  }
  // First vector is constant.
  const Vector v0 = rep.eigenvectors.col(0);
  EXPECT_LT((v0.array() - v0(0)).abs().maxCoeff(), 1e-12);
}

TEST(DenseSpectrum, FiedlerVectorSeparatesBridgedTriangles) {
  const SpectrumReport rep = dense_spectrum(NormalizedLaplacian(two_triangles(0.1)), 2);
  const Vector f = rep.eigenvectors.col(1);
  EXPECT_GT(f(0) * f(1), 0.0);
  EXPECT_GT(f(0) * f(2), 0.0);
  EXPECT_LT(f(0) * f(3), 0.0);
  EXPECT_GT(f(3) * f(5), 0.0);
}

TEST(DenseSpectrum, DisconnectedGraphNullSpaceIsComponentIndicator) {
  const SpectrumReport rep = dense_spectrum(NormalizedLaplacian(two_triangles(0.0)), 3);
  EXPECT_NEAR(rep.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(rep.eigenvalues[1], 0.0, 1e-12);
  const Vector v1 = rep.eigenvectors.col(1);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(v1(i), v1(0), 1e-12);
    EXPECT_NEAR(v1(i + 3), -v1(0), 1e-12);
  }
}

TEST(DenseSpectrum, ReportsDegeneracy) {
  const SpectrumReport rep = dense_spectrum(NormalizedLaplacian(complete_graph(4)), 4);
  EXPECT_TRUE(rep.degenerate());
  EXPECT_EQ(rep.degenerate_pairs.front(), 1u);
  const SpectrumReport clean = dense_spectrum(NormalizedLaplacian(path_graph(4)), 4);
  EXPECT_FALSE(clean.degenerate());
}

TEST(SpectralGap, AbsoluteAndRelativeModes) {
  const std::vector<double> ev{0.0, 0.01, 0.02, 0.9, 1.0};
  EXPECT_EQ(detect_spectral_gap(ev, GapMode::kAbsolute), 3u);
  EXPECT_EQ(detect_spectral_gap(ev, GapMode::kRelative), 1u);
  // Tie resolves toward the smaller index.
  const std::vector<double> tie{0.0, 1.0, 2.0};
  EXPECT_EQ(detect_spectral_gap(tie), 1u);
  EXPECT_NEAR(gap_ratio(tie, 1), 1.0, 1e-15);
  EXPECT_NEAR(gap_ratio(ev, 3), 0.88 / 0.1, 1e-12);
  const std::vector<double> one{0.0};
  EXPECT_THROW(detect_spectral_gap(one), std::invalid_argument);
}

TEST(SignCluster, BinaryEncoding) {
  Matrix v(3, 2);
  v << 1, 1,    // (+,+) -> 3
      -1, 1,    // (-,+) -> 2
      -1, -1;   // (-,-) -> 0
  const auto a = sign_cluster(v);
  EXPECT_EQ(a.labels, (std::vector<std::uint64_t>{3, 2, 0}));
  EXPECT_EQ(a.k_used, 2u);
  Matrix z(2, 1);
  z << 0.0, -1e-300;
  EXPECT_EQ(sign_cluster(z).labels, (std::vector<std::uint64_t>{1, 0}));
}

TEST(PartitionAgreement, BestBijection) {
  const std::vector<std::uint64_t> truth{0, 0, 0, 1, 1, 1};
  const std::vector<std::uint64_t> swapped{7, 7, 7, 3, 3, 3};
  EXPECT_DOUBLE_EQ(partition_agreement(swapped, truth), 1.0);
  EXPECT_TRUE(same_partition(swapped, truth));
  const std::vector<std::uint64_t> one_off{7, 7, 3, 3, 3, 3};
  EXPECT_NEAR(partition_agreement(one_off, truth), 5.0 / 6.0, 1e-15);
  EXPECT_FALSE(same_partition(one_off, truth));
  // More predicted clusters than reference clusters.
  const std::vector<std::uint64_t> split{0, 1, 2, 3, 3, 3};
  EXPECT_NEAR(partition_agreement(split, truth), 4.0 / 6.0, 1e-15);
}

TEST(OracleCluster, DisjointTrianglesMatchComponents) {
  const auto a = oracle_cluster(NormalizedLaplacian(two_triangles(0.0)), 1);
  EXPECT_DOUBLE_EQ(partition_agreement(a.labels, std::vector<std::uint64_t>{0, 0, 0, 1, 1, 1}), 1.0);
}

TEST(ConnectedComponents, LabelsBySmallestMember) {
  Matrix w = Matrix::Zero(5, 5);
  w(0, 3) = w(3, 0) = 1.0;
  w(1, 4) = w(4, 1) = 1.0;
  EXPECT_EQ(connected_components(w), (std::vector<std::size_t>{0, 1, 2, 0, 1}));
}

TEST(SimilarityFromJacobian, SymmetrizesMagnitudes) {
  Matrix j(2, 2);
  j << -3, 0.5, -1.5, 7;
  const Matrix w = similarity_weights(j);
  EXPECT_DOUBLE_EQ(w(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(w(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(w(0, 0), 0.0);
}

TEST(Rng, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  EXPECT_EQ(derive_seed(5, "wave-init"), derive_seed(5, "wave-init"));
  for (std::uint64_t c = 0; c < 1000; ++c) {
    const double u = counter_uniform(42, c);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(EdgeListIo, RoundTripAndErrors) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 0.25}};
  const std::string text = format_edge_list(3, edges);
  EXPECT_EQ(text, "3 2\n0 1 1\n1 2 0.25\n");
  const EdgeList back = parse_edge_list("# comment\n" + text);
  EXPECT_EQ(back.n, 3u);
  ASSERT_EQ(back.edges.size(), 2u);
  EXPECT_DOUBLE_EQ(back.edges[1].weight, 0.25);
  EXPECT_THROW(parse_edge_list("3 3\n0 1 1\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\n0 5 1\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\n0 1 x\n"), GraphError);
  EXPECT_THROW(parse_edge_list(""), GraphError);
}

TEST(MatrixIo, RoundTrip) {
  Matrix m(2, 2);
  m << 0, 0.5, 0.5, 0;
  const Matrix back = parse_matrix(format_matrix(m));
  EXPECT_TRUE(back.isApprox(m));
  EXPECT_THROW(parse_matrix("2\n0 1 1\n"), GraphError);
}

TEST(IniConfig, SectionsCommentsAndUnknownKeys) {
  const auto cfg = IniConfig::parse("# top\n[wave]\nc = 1.2  # speed\nk=2\n\n[mc]\nsampler = sobol\n");
  EXPECT_DOUBLE_EQ(cfg.get_double("wave", "c", 0.0), 1.2);
  EXPECT_EQ(cfg.get_uint("wave", "k", 0), 2u);
  EXPECT_EQ(cfg.get("mc", "sampler"), "sobol");
  EXPECT_EQ(cfg.get_uint("wave", "t_max", 99), 99u);
  EXPECT_NO_THROW(cfg.check({{"wave", {"c", "k"}}, {"mc", {"sampler"}}}));
  EXPECT_THROW(cfg.check({{"wave", {"c"}}, {"mc", {"sampler"}}}), ConfigError);
  EXPECT_THROW(cfg.check({{"wave", {"c", "k"}}}), ConfigError);
  EXPECT_THROW(IniConfig::parse("[a]\nx = 1\nx = 2\n"), ConfigError);
  EXPECT_THROW(IniConfig::parse("[a\n"), ConfigError);
  EXPECT_THROW(IniConfig::parse("novalue\n"), ConfigError);
  const auto bad = IniConfig::parse("[a]\nx = abc\n");
  EXPECT_THROW(bad.get_double("a", "x", 0.0), ConfigError);
  const auto list = IniConfig::parse("[o]\nf = a, b ,,c\n");
  EXPECT_EQ(list.get_list("o", "f"), (std::vector<std::string>{"a", "b", "c"}));
}

}  // namespace
}  // namespace wavepwr
