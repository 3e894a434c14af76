#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "wavepwr/error.hpp"

namespace fs = std::filesystem;
using namespace wavepwr;

int main(int argc, char** argv) {
  CLI::App app{"Wave-equation clustering and probabilistic waveform relaxation"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  fs::path out = ".";
  fs::path config_path;
  bool oracle = false;
  std::optional<std::string> sampler;
  std::optional<std::size_t> samples;
  std::string kind;
  fs::path input;
  fs::path truth;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", seed, "Root RNG seed");
    cmd->add_option("--out", out, "Output directory");
  };

  auto* generate = app.add_subcommand("generate", "Generate a benchmark graph or model");
  generate->add_option("kind", kind, "planted-partition | kuramoto")->required();
  add_common(generate);

  auto* cluster = app.add_subcommand("cluster", "Cluster a graph by the wave method or the dense oracle");
  cluster->add_option("graph", input, "Edge-list file")->required()->check(CLI::ExistingFile);
  cluster->add_option("--truth", truth, "Ground-truth labels JSON")->check(CLI::ExistingFile);
  cluster->add_flag("--oracle", oracle, "Use the dense eigensolver path");
  add_common(cluster);

  auto* decompose = app.add_subcommand("decompose", "Split a network model into weakly coupled subsystems");
  decompose->add_option("model", input, "Model spec JSON")->required()->check(CLI::ExistingFile);
  add_common(decompose);

  auto* uq = app.add_subcommand("uq", "Propagate parameter uncertainty by PWR and/or Monte Carlo");
  uq->add_option("model", input, "Model spec JSON (default: [model] path in the job file)")->check(CLI::ExistingFile);
  uq->add_option("--sampler", sampler, "pseudo | sobol")->check(CLI::IsMember({"pseudo", "sobol"}));
  uq->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  add_common(uq);

  CLI11_PARSE(app, argc, argv);

  try {
    const IniConfig config = config_path.empty() ? IniConfig::parse("", "<defaults>") : IniConfig::load(config_path);
    if (generate->parsed()) {
      cli::cmd_generate(kind, config, seed, out, std::cout);
    } else if (cluster->parsed()) {
      std::optional<fs::path> t;
      if (!truth.empty()) t = truth;
      cli::cmd_cluster(input, t, config, oracle, seed, out, std::cout);
    } else if (decompose->parsed()) {
      cli::cmd_decompose(input, config, out, std::cout);
    } else if (uq->parsed()) {
      cli::cmd_uq(input, config_path, config, {seed, sampler, samples}, out, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "wavepwr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
