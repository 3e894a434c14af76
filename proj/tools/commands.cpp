#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "output.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/generators.hpp"
#include "wavepwr/graph.hpp"
#include "wavepwr/io.hpp"
#include "wavepwr/model_spec.hpp"
#include "wavepwr/sampling.hpp"
#include "wavepwr/spectrum.hpp"
#include "wavepwr/wave.hpp"

namespace wavepwr::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t require_seed(std::optional<std::uint64_t> seed, const std::string& what) {
  if (!seed) throw ConfigError("--seed is required for " + what);
  return *seed;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

GapMode parse_gap_mode(const std::string& s) {
  if (s == "absolute") return GapMode::kAbsolute;
  if (s == "relative") return GapMode::kRelative;
  throw ConfigError("gap_mode must be absolute or relative, got '" + s + "'");
}

std::vector<std::size_t> parse_sizes(const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& s : items) out.push_back(static_cast<std::size_t>(parse_uint_strict(s)));
  return out;
}

json labels_json(std::span<const std::uint64_t> labels) {
  json arr = json::array();
  for (auto l : canonical_labels(labels)) arr.push_back(l);
  return arr;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

DecomposeOptions decompose_options(const IniConfig& cfg) {
  DecomposeOptions opt;
  opt.t0 = cfg.get_double("decompose", "t0", opt.t0);
  opt.horizon = cfg.get_double("decompose", "horizon", opt.horizon);
  opt.dt = cfg.get_double("decompose", "dt", opt.dt);
  opt.gap_mode = parse_gap_mode(cfg.get("decompose", "gap_mode", "absolute"));
  return opt;
}

Histogram shared_histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  return make_histogram(values, lo, hi, bins);
}

}  // namespace

const IniConfig::Schema& config_schema() {
  static const IniConfig::Schema schema = {
      {"", {}},
      {"planted-partition", {"blocks", "p_in", "p_out"}},
      {"kuramoto", {"pairs", "intra", "inter", "omega_lo", "omega_hi", "phase_hi", "uncertainty"}},
      {"wave", {"c", "t_max", "k", "eta", "blowup_factor"}},
      {"decompose", {"t0", "horizon", "dt", "gap_mode"}},
      {"model", {"path"}},
      {"decomposition", {"source"}},
      {"time", {"t0", "horizon", "dt"}},
      {"pwr", {"enabled", "l_s", "l_c", "order", "max_iterations", "tol"}},
      {"mc", {"enabled", "samples", "sampler"}},
      {"output", {"functionals", "bins", "hist_lo", "hist_hi"}},
      {"cost", {"level"}},
  };
  return schema;
}

GenerateResult cmd_generate(const std::string& kind, const IniConfig& cfg, std::optional<std::uint64_t> seed,
                            const fs::path& out, std::ostream& log) {
  cfg.check(config_schema());
  GenerateResult result;
  if (kind == "planted-partition") {
    const std::uint64_t s = require_seed(seed, "generate planted-partition");
    auto blocks = parse_sizes(cfg.get_list("planted-partition", "blocks"));
    if (blocks.empty()) blocks = {680, 320};
    const double p_in = cfg.get_double("planted-partition", "p_in", 0.3);
    const double p_out = cfg.get_double("planted-partition", "p_out", 0.01);
    const PlantedGraph g = planted_partition(blocks, p_in, p_out, s);
    OutputSet files(out);
    files.add("graph.edges", format_edge_list(g.n, g.edges));
    files.add("truth.json", dump(json{{"labels", g.labels}}));
    files.commit();
    result.files = {"graph.edges", "truth.json"};
    result.nodes = g.n;
    result.edges = g.edges.size();
    result.expected_edges = expected_edge_count(blocks, p_in, p_out);
    log << "planted partition: " << g.n << " nodes, " << g.edges.size() << " edges (expected "
        << result.expected_edges << ")\n";
  } else if (kind == "kuramoto") {
    const std::uint64_t s = require_seed(seed, "generate kuramoto");
    KuramotoBenchmarkOptions opt;
    opt.pairs = static_cast<std::size_t>(cfg.get_uint("kuramoto", "pairs", opt.pairs));
    opt.intra = cfg.get_double("kuramoto", "intra", opt.intra);
    opt.inter = cfg.get_double("kuramoto", "inter", opt.inter);
    opt.omega_lo = cfg.get_double("kuramoto", "omega_lo", opt.omega_lo);
    opt.omega_hi = cfg.get_double("kuramoto", "omega_hi", opt.omega_hi);
    opt.phase_hi = cfg.get_double("kuramoto", "phase_hi", opt.phase_hi);
    const std::string uncertainty = cfg.get("kuramoto", "uncertainty", "gaussian rel=0.2");
    const KuramotoBenchmark b = kuramoto_benchmark(opt, s);
    ModelSpec spec;
    spec.kind = "kuramoto";
    spec.coupling = b.coupling;
    spec.params = b.omega;
    spec.x0 = b.x0;
    for (std::size_t i : b.uncertain) {
      spec.uncertain.push_back({i, parse_distribution(uncertainty, b.omega(static_cast<Eigen::Index>(i)))});
    }
    const WeightedGraph graph(b.coupling);
    const auto edges = graph.edges();
    OutputSet files(out);
    files.add("model.json", model_spec_to_json(spec));
    files.add("graph.edges", format_edge_list(graph.size(), edges));
    files.add("truth.json", dump(json{{"labels", b.pair_labels}}));
    files.commit();
    result.files = {"model.json", "graph.edges", "truth.json"};
    result.nodes = graph.size();
    result.edges = edges.size();
    log << "kuramoto benchmark: " << result.nodes << " oscillators, " << spec.uncertain.size()
        << " uncertain frequencies\n";
  } else {
    throw ConfigError("unknown generator '" + kind + "' (expected planted-partition or kuramoto)");
  }
  return result;
}

ClusterResult cmd_cluster(const fs::path& graph_path, const std::optional<fs::path>& truth, const IniConfig& cfg,
                          bool oracle, std::optional<std::uint64_t> seed, const fs::path& out, std::ostream& log) {
  cfg.check(config_schema());
  const WeightedGraph graph = read_graph(graph_path);
  const NormalizedLaplacian lap(graph);

  WaveConfig wc;
  wc.c = cfg.get_double("wave", "c", wc.c);
  wc.t_max = static_cast<std::size_t>(cfg.get_uint("wave", "t_max", wc.t_max));
  wc.k = static_cast<std::size_t>(cfg.get_uint("wave", "k", wc.k));
  wc.eta = cfg.get_double("wave", "eta", wc.eta);
  wc.blowup_factor = cfg.get_double("wave", "blowup_factor", wc.blowup_factor);

  ClusterResult result;
  json doc;
  std::optional<std::string> modes_csv;
  if (oracle) {
    result.method = "oracle";
    result.assignment = oracle_cluster(lap, wc.k);
  } else {
    result.method = "wave";
    wc.seed = require_seed(seed, "the wave clustering path");
    const WaveClusterResult wr = cluster_by_wave_detailed(lap, wc);
    result.assignment = wr.assignment;
    result.t_max = wr.t_max;
    doc["t_max"] = wr.t_max;
    CsvWriter csv({"mode", "theta", "lambda"});
    for (std::size_t m = 0; m < wr.modes.theta.size(); ++m) {
      csv.row(std::vector<double>{static_cast<double>(m + 1), wr.modes.theta[m], wr.modes.lambda[m]});
    }
    modes_csv = csv.str();
  }
  doc["method"] = result.method;
  doc["k"] = result.assignment.cluster_count();
  doc["k_used"] = result.assignment.k_used;
  doc["labels"] = labels_json(result.assignment.labels);
  if (truth) {
    const auto reference = read_labels(*truth);
    if (reference.size() != result.assignment.size()) {
      throw ConfigError("ground truth has " + std::to_string(reference.size()) + " labels, graph has " +
                        std::to_string(result.assignment.size()) + " nodes");
    }
    result.agreement = partition_agreement(result.assignment.labels, reference);
    doc["agreement"] = *result.agreement;
  }
  OutputSet files(out);
  files.add("assignment.json", dump(doc));
  if (modes_csv) files.add("modes.csv", *modes_csv);
  files.commit();
  log << result.method << " clustering: " << result.assignment.cluster_count() << " clusters";
  if (result.agreement) log << ", agreement " << *result.agreement;
  log << '\n';
  return result;
}

NetworkDecomposition cmd_decompose(const fs::path& model_path, const IniConfig& cfg, const fs::path& out,
                                   std::ostream& log) {
  cfg.check(config_schema());
  const ModelSpec spec = read_model_spec(model_path);
  const NetworkModel model = spec.build();
  NetworkDecomposition d = decompose_network(model, decompose_options(cfg));
  const SpectralPartition& p = d.partition;

  json doc;
  doc["gap_index"] = p.gap_index;
  doc["gap_ratio"] = std::isfinite(p.gap_ratio) ? json(p.gap_ratio) : json(nullptr);
  doc["components"] = p.components;
  doc["zero_multiplicity"] = p.zero_multiplicity;
  doc["clusters"] = p.clusters;
  doc["labels"] = labels_json(p.assignment.labels);
  CsvWriter csv({"index", "eigenvalue"});
  for (std::size_t i = 0; i < p.eigenvalues.size(); ++i) {
    csv.row(std::vector<double>{static_cast<double>(i + 1), p.eigenvalues[i]});
  }
  OutputSet files(out);
  files.add("clusters.json", dump(doc));
  files.add("spectrum.csv", csv.str());
  files.commit();
  log << "gap_index = " << p.gap_index << ", clusters = " << p.clusters.size()
      << ", zero multiplicity = " << p.zero_multiplicity << '\n';
  return d;
}

UqResult cmd_uq(const fs::path& model_arg, const fs::path& job_path, const IniConfig& job,
                const UqOverrides& overrides, const fs::path& out, std::ostream& log) {
  job.check(config_schema());
  const fs::path base = job_path.empty() ? fs::path(".") : job_path.parent_path();
  fs::path model_path = model_arg;
  if (model_path.empty()) {
    const auto p = job.find("model", "path");
    if (!p) throw ConfigError("no model given (positional argument or [model] path)");
    model_path = base / *p;
  }
  const ModelSpec spec = read_model_spec(model_path);
  const NetworkModel model = spec.build();
  const std::vector<RandomParam>& params = spec.uncertain;

  const double t0 = job.get_double("time", "t0", 0.0);
  const double horizon = job.get_double("time", "horizon", 1.0);
  const double dt = job.get_double("time", "dt", 0.01);

  const std::string source = job.get("decomposition", "source", "auto");
  SubsystemDecomposition decomposition;
  if (source == "auto") {
    decomposition = decompose_network(model, decompose_options(job)).subsystems;
  } else {
    decomposition = decompose(model, read_clusters(base / source));
  }

  PwrOptions po;
  po.l_s = static_cast<std::size_t>(job.get_uint("pwr", "l_s", po.l_s));
  po.l_c = static_cast<std::size_t>(job.get_uint("pwr", "l_c", po.l_c));
  po.total_order = static_cast<int>(job.get_uint("pwr", "order", static_cast<std::uint64_t>(po.total_order)));
  po.max_iterations = static_cast<std::size_t>(job.get_uint("pwr", "max_iterations", po.max_iterations));
  po.tol = job.get_double("pwr", "tol", po.tol);
  po.t0 = t0;
  po.horizon = horizon;
  po.dt = dt;
  const bool run_pwr = job.get_bool("pwr", "enabled", true);
  const bool run_mc = job.get_bool("mc", "enabled", false);

  MonteCarloOptions mo;
  mo.samples = overrides.samples.value_or(static_cast<std::size_t>(job.get_uint("mc", "samples", 10000)));
  mo.sampler = parse_sampler(overrides.sampler.value_or(job.get("mc", "sampler", "sobol")));
  mo.t0 = t0;
  mo.horizon = horizon;
  mo.dt = dt;
  auto names = job.get_list("output", "functionals");
  if (names.empty()) {
    std::ostringstream os;
    os << (spec.kind == "kuramoto" ? "order_parameter@" : "state:0@") << (t0 + horizon);
    names.push_back(os.str());
  }
  for (const auto& n : names) {
    try {
      mo.functionals.push_back(Functional::parse(n));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const bool nonlinear = std::any_of(mo.functionals.begin(), mo.functionals.end(),
                                     [](const Functional& f) { return f.kind != Functional::Kind::kState; });
  if (run_mc || (run_pwr && nonlinear)) {
    mo.seed = require_seed(overrides.seed, run_mc ? "Monte Carlo sampling" : "sampling the surrogate");
  } else if (overrides.seed) {
    mo.seed = *overrides.seed;
  }
  const bool sample_surrogate = run_pwr && (run_mc || nonlinear || overrides.seed.has_value());

  UqResult result;
  result.subsystems = decomposition.size();
  std::optional<SampleStatistics> surrogate;
  if (run_pwr) {
    result.pwr = pwr_solve(model, decomposition, params, po);
    log << "pwr: " << result.pwr->iterations << " iterations, " << (result.pwr->converged ? "converged" : "not converged")
        << ", " << result.pwr->deterministic_runs << " deterministic runs\n";
    if (sample_surrogate) surrogate = surrogate_statistics(*result.pwr, model.nominal_params(), params, mo);
  }
  if (run_mc) {
    result.mc = mc_reference(model, params, mo);
    log << "mc: " << mo.samples << ' ' << to_string(mo.sampler) << " samples\n";
  }

  std::vector<std::size_t> random_idx;
  for (const auto& p : params) random_idx.push_back(p.index);
  result.cost_level = static_cast<std::size_t>(job.get_uint("cost", "level", po.l_s));
  result.cost = cost_estimate(decomposition, random_idx, result.cost_level, po.l_s, po.l_c, po.max_iterations);
  log << "cost: R_F = " << sci(result.cost.full_grid) << ", R_I = " << sci(result.cost.relaxation)
      << ", R_F/R_I = " << sci(result.cost.ratio) << '\n';

  const std::size_t bins = static_cast<std::size_t>(job.get_uint("output", "bins", 50));
  const std::vector<double> times = uniform_time_grid(t0, horizon, dt);
  CsvWriter hist_csv({"functional", "source", "bin_lo", "bin_hi", "count"});
  bool any_hist = false;
  for (std::size_t f = 0; f < mo.functionals.size(); ++f) {
    const Functional& fn = mo.functionals[f];
    FunctionalSummary s;
    s.functional = fn;
    s.times = times;
    if (result.pwr) {
      if (fn.kind == Functional::Kind::kState) {
        if (fn.state >= model.state_dim()) throw ConfigError("functional " + fn.name() + " state out of range");
        const Vector m = result.pwr->mean(fn.state);
        const Vector v = result.pwr->variance(fn.state);
        s.pwr_mean = std::vector<double>(m.data(), m.data() + m.size());
        s.pwr_variance = std::vector<double>(v.data(), v.data() + v.size());
      } else if (surrogate) {
        const auto& fs = surrogate->functionals[f];
        s.pwr_mean = std::vector<double>(fs.mean.data(), fs.mean.data() + fs.mean.size());
        s.pwr_variance = std::vector<double>(fs.variance.data(), fs.variance.data() + fs.variance.size());
      }
    }
    if (result.mc) {
      const auto& fs = result.mc->functionals[f];
      s.mc_mean = std::vector<double>(fs.mean.data(), fs.mean.data() + fs.mean.size());
      s.mc_variance = std::vector<double>(fs.variance.data(), fs.variance.data() + fs.variance.size());
    }
    std::vector<std::pair<std::string, const std::vector<double>*>> sources;
    if (surrogate) sources.emplace_back("pwr", &surrogate->functionals[f].values);
    if (result.mc) sources.emplace_back("mc", &result.mc->functionals[f].values);
    if (!sources.empty()) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& [name, vals] : sources) {
        for (double v : *vals) {
          if (!std::isfinite(v)) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      lo = job.get_double("output", "hist_lo", lo);
      hi = job.get_double("output", "hist_hi", hi);
      if (!(hi > lo)) hi = lo + 1e-12 * std::max(1.0, std::abs(lo));
      std::vector<Histogram> hs;
      for (const auto& [name, vals] : sources) {
        hs.push_back(shared_histogram(*vals, lo, hi, bins));
        for (std::size_t b = 0; b < bins; ++b) {
          hist_csv.row(std::vector<std::string>{fn.name(), name, CsvWriter::format(hs.back().bin_lo(b)),
                                                CsvWriter::format(hs.back().bin_hi(b)),
                                                std::to_string(hs.back().counts[b])});
        }
      }
      any_hist = true;
      if (hs.size() == 2) {
        s.histogram_l1 = histogram_l1(hs[0], hs[1]);
        log << fn.name() << ": histogram L1 distance (pwr vs mc) = " << *s.histogram_l1 << '\n';
      }
    }
    result.functionals.push_back(std::move(s));
  }

  std::vector<std::string> header{"t"};
  for (const auto& s : result.functionals) {
    const std::string n = s.functional.name();
    if (s.pwr_mean) {
      header.push_back(n + " pwr_mean");
      header.push_back(n + " pwr_var");
    }
    if (s.mc_mean) {
      header.push_back(n + " mc_mean");
      header.push_back(n + " mc_var");
    }
  }
  CsvWriter moments(header);
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (const auto& s : result.functionals) {
      if (s.pwr_mean) {
        row.push_back((*s.pwr_mean)[k]);
        row.push_back((*s.pwr_variance)[k]);
      }
      if (s.mc_mean) {
        row.push_back((*s.mc_mean)[k]);
        row.push_back((*s.mc_variance)[k]);
      }
    }
    moments.row(row);
  }

  json doc;
  doc["subsystems"] = result.subsystems;
  doc["uncertain_parameters"] = params.size();
  if (result.pwr) {
    const PwrReport& r = *result.pwr;
    doc["pwr"] = {{"iterations", r.iterations},
                  {"converged", r.converged},
                  {"metric_history", r.metric_history},
                  {"deterministic_runs", r.deterministic_runs},
                  {"l_s", po.l_s},
                  {"l_c", po.l_c},
                  {"order", po.total_order},
                  {"max_iterations", po.max_iterations},
                  {"tol", po.tol}};
  }
  if (result.mc) doc["mc"] = {{"samples", mo.samples}, {"sampler", to_string(mo.sampler)}};
  doc["cost_estimate"] = {{"level", result.cost_level},
                          {"full_grid_runs", result.cost.full_grid},
                          {"pwr_runs", result.cost.relaxation},
                          {"ratio", result.cost.ratio}};
  json fdoc = json::array();
  for (const auto& s : result.functionals) {
    json e{{"name", s.functional.name()}};
    const std::size_t k = static_cast<std::size_t>(
        std::min_element(times.begin(), times.end(),
                         [&](double a, double b) { return std::abs(a - s.functional.time) < std::abs(b - s.functional.time); }) -
        times.begin());
    if (s.pwr_mean) {
      e["pwr_mean"] = (*s.pwr_mean)[k];
      e["pwr_variance"] = (*s.pwr_variance)[k];
    }
    if (s.mc_mean) {
      e["mc_mean"] = (*s.mc_mean)[k];
      e["mc_variance"] = (*s.mc_variance)[k];
    }
    if (s.histogram_l1) e["histogram_l1"] = *s.histogram_l1;
    fdoc.push_back(e);
  }
  doc["functionals"] = fdoc;

  OutputSet files(out);
  files.add("moments.csv", moments.str());
  if (any_hist) files.add("histogram.csv", hist_csv.str());
  files.add("pwr_report.json", dump(doc));
  files.commit();
  return result;
}

}  // namespace wavepwr::cli
