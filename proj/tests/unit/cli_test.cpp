#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "output.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/io.hpp"

namespace wavepwr::cli {
namespace {

namespace fs = std::filesystem;
using testing::scratch_dir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST(OutputSet, CommitRenamesAndRollbackRemoves) {
  const fs::path dir = scratch_dir("output_set");
  {
    OutputSet out(dir);
    out.add("a.txt", "alpha");
    out.commit();
  }
  EXPECT_EQ(slurp(dir / "a.txt"), "alpha");
  {
    OutputSet out(dir);
    out.add("b.txt", "beta");
  }
  EXPECT_FALSE(fs::exists(dir / "b.txt"));
  EXPECT_FALSE(fs::exists(dir / "b.txt.partial"));
}

TEST(Generate, PlantedPartitionIsReproducible) {
  const fs::path a = scratch_dir("gen_a"), b = scratch_dir("gen_b");
  const IniConfig cfg = IniConfig::parse("[planted-partition]\nblocks = 30, 20\np_in = 0.4\np_out = 0.02\n");
  std::ostringstream log;
  const GenerateResult r = cmd_generate("planted-partition", cfg, 3, a, log);
  cmd_generate("planted-partition", cfg, 3, b, log);
  EXPECT_EQ(r.nodes, 50u);
  EXPECT_EQ(slurp(a / "graph.edges"), slurp(b / "graph.edges"));
  EXPECT_EQ(slurp(a / "truth.json"), slurp(b / "truth.json"));
  const EdgeList el = read_edge_list(a / "graph.edges");
  EXPECT_EQ(el.n, 50u);
  EXPECT_EQ(el.edges.size(), r.edges);
}

TEST(Generate, Errors) {
  std::ostringstream log;
  const fs::path dir = scratch_dir("gen_err");
  EXPECT_THROW(cmd_generate("planted-partition", IniConfig::parse(""), std::nullopt, dir, log), ConfigError);
  try {
    cmd_generate("planted-partition", IniConfig::parse("[planted-partition]\nblocks = 1, 1\n"), 1, dir, log);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("block too small"), std::string::npos);
  }
  EXPECT_THROW(cmd_generate("planted-partition", IniConfig::parse("[planted-partition]\nbogus = 1\n"), 1, dir, log),
               ConfigError);
  EXPECT_THROW(cmd_generate("lattice", IniConfig::parse(""), 1, dir, log), ConfigError);
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(Cluster, WaveAndOracleAgreeAndRerunsAreIdentical) {
  const fs::path gen = scratch_dir("cluster_gen");
  std::ostringstream log;
  cmd_generate("planted-partition", IniConfig::parse("[planted-partition]\nblocks = 60, 40\n"), 8, gen, log);
  const fs::path w1 = scratch_dir("cluster_w1"), w2 = scratch_dir("cluster_w2"), o = scratch_dir("cluster_o");
  const IniConfig none = IniConfig::parse("");
  const ClusterResult a = cmd_cluster(gen / "graph.edges", gen / "truth.json", none, false, 4, w1, log);
  cmd_cluster(gen / "graph.edges", gen / "truth.json", none, false, 4, w2, log);
  const ClusterResult c = cmd_cluster(gen / "graph.edges", gen / "truth.json", none, true, std::nullopt, o, log);
  EXPECT_EQ(a.method, "wave");
  EXPECT_EQ(c.method, "oracle");
  ASSERT_TRUE(a.agreement.has_value());
  EXPECT_DOUBLE_EQ(*a.agreement, 1.0);
  EXPECT_TRUE(same_partition(a.assignment.labels, c.assignment.labels));
  EXPECT_EQ(slurp(w1 / "assignment.json"), slurp(w2 / "assignment.json"));
  EXPECT_EQ(slurp(w1 / "modes.csv"), slurp(w2 / "modes.csv"));
  EXPECT_THROW(cmd_cluster(gen / "graph.edges", std::nullopt, none, false, std::nullopt, w1, log), ConfigError);
}

TEST(Cluster, MissingGraphFile) {
  std::ostringstream log;
  EXPECT_THROW(cmd_cluster(scratch_dir("missing") / "nope.edges", std::nullopt, IniConfig::parse(""), true,
                           std::nullopt, scratch_dir("missing_out"), log),
               ConfigError);
}

TEST(Decompose, KuramotoSmallRing) {
  const fs::path gen = scratch_dir("dec_gen"), out = scratch_dir("dec_out");
  std::ostringstream log;
  cmd_generate("kuramoto", IniConfig::parse("[kuramoto]\npairs = 8\n"), 2, gen, log);
  const NetworkDecomposition d =
      cmd_decompose(gen / "model.json", IniConfig::parse("[decompose]\nhorizon = 2\n"), out, log);
  EXPECT_EQ(d.partition.gap_index, 8u);
  EXPECT_TRUE(fs::exists(out / "clusters.json"));
  EXPECT_TRUE(fs::exists(out / "spectrum.csv"));
  EXPECT_NE(log.str().find("gap_index = 8"), std::string::npos);
}

const char* kDecayModel = R"({
  "kind": "linear",
  "params": [1.5],
  "x0": [1.0],
  "coupling": [],
  "uncertain": [{"index": 0, "distribution": "uniform", "lo": 1.0, "hi": 2.0}]
})";

TEST(Uq, LinearDecayMatchesAnalyticMean) {
  const fs::path dir = scratch_dir("uq_linear");
  write(dir / "model.json", kDecayModel);
  write(dir / "job.ini",
        "[model]\npath = model.json\n[time]\nhorizon = 1\ndt = 0.01\n[pwr]\nl_s = 5\n[mc]\nenabled = true\n"
        "samples = 2000\nsampler = sobol\n[output]\nfunctionals = state:0@1\n");
  std::ostringstream log;
  const IniConfig job = IniConfig::load(dir / "job.ini");
  const UqResult r = cmd_uq({}, dir / "job.ini", job, UqOverrides{3, std::nullopt, std::nullopt}, dir / "out", log);
  ASSERT_TRUE(r.pwr.has_value());
  ASSERT_TRUE(r.mc.has_value());
  const Vector m = r.pwr->mean(0);
  EXPECT_NEAR(m[m.size() - 1], 0.23254415793482963, 1e-4);
  EXPECT_NEAR(r.mc->state_mean(0, m.size() - 1), 0.23254415793482963, 1e-3);
  for (const char* f : {"moments.csv", "histogram.csv", "pwr_report.json"}) EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;

  const UqResult again = cmd_uq({}, dir / "job.ini", job, UqOverrides{3, std::nullopt, std::nullopt}, dir / "out2", log);
  for (const char* f : {"moments.csv", "histogram.csv", "pwr_report.json"}) {
    EXPECT_EQ(slurp(dir / "out" / f), slurp(dir / "out2" / f)) << f;
  }
  EXPECT_THROW(cmd_uq({}, dir / "job.ini", job, UqOverrides{}, dir / "out3", log), ConfigError);
  EXPECT_FALSE(fs::exists(dir / "out3" / "moments.csv"));
}

TEST(Uq, UnknownJobKeyIsRejected) {
  const fs::path dir = scratch_dir("uq_bad");
  write(dir / "model.json", kDecayModel);
  std::ostringstream log;
  const IniConfig job = IniConfig::parse("[model]\npath = model.json\n[pwr]\nlevels = 3\n");
  EXPECT_THROW(cmd_uq({}, dir / "job.ini", job, UqOverrides{1, std::nullopt, std::nullopt}, dir / "out", log),
               ConfigError);
}

}  // namespace
}  // namespace wavepwr::cli
