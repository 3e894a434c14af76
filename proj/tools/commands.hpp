#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wavepwr/config.hpp"
#include "wavepwr/cost.hpp"
#include "wavepwr/montecarlo.hpp"
#include "wavepwr/partition.hpp"
#include "wavepwr/pipeline.hpp"
#include "wavepwr/pwr.hpp"

namespace wavepwr::cli {

/// Every section and key accepted by any command.
const IniConfig::Schema& config_schema();

struct GenerateResult {
  std::vector<std::string> files;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double expected_edges = 0.0;
};

GenerateResult cmd_generate(const std::string& kind, const IniConfig& config, std::optional<std::uint64_t> seed,
                            const std::filesystem::path& out, std::ostream& log);

struct ClusterResult {
  ClusterAssignment assignment;
  std::string method;
  std::size_t t_max = 0;
  std::optional<double> agreement;
};

ClusterResult cmd_cluster(const std::filesystem::path& graph, const std::optional<std::filesystem::path>& truth,
                          const IniConfig& config, bool oracle, std::optional<std::uint64_t> seed,
                          const std::filesystem::path& out, std::ostream& log);

NetworkDecomposition cmd_decompose(const std::filesystem::path& model, const IniConfig& config,
                                   const std::filesystem::path& out, std::ostream& log);

struct UqOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sampler;
  std::optional<std::size_t> samples;
};

struct FunctionalSummary {
  Functional functional;
  std::vector<double> times;
  std::optional<std::vector<double>> pwr_mean, pwr_variance;
  std::optional<std::vector<double>> mc_mean, mc_variance;
  std::optional<double> histogram_l1;
};

struct UqResult {
  std::optional<PwrReport> pwr;
  std::optional<SampleStatistics> mc;
  CostEstimate cost;
  std::size_t cost_level = 0;
  std::size_t subsystems = 0;
  std::vector<FunctionalSummary> functionals;
};

/// model may be empty, in which case the job's [model] path is used
/// (relative to the job file).
UqResult cmd_uq(const std::filesystem::path& model, const std::filesystem::path& job_path, const IniConfig& job,
                const UqOverrides& overrides, const std::filesystem::path& out, std::ostream& log);

}  // namespace wavepwr::cli
