#include <benchmark/benchmark.h>

#include "wavepwr/dynet.hpp"
#include "wavepwr/generators.hpp"
#include "wavepwr/models.hpp"
#include "wavepwr/polychaos.hpp"
#include "wavepwr/pwr.hpp"
#include "wavepwr/quadrature.hpp"
#include "wavepwr/sampling.hpp"
#include "wavepwr/spectrum.hpp"
#include "wavepwr/wave.hpp"

namespace {

using namespace wavepwr;

NormalizedLaplacian planted(std::size_t n) {
  const PlantedGraph g = planted_partition({n / 2, n - n / 2}, 0.3, 0.01, 1);
  return NormalizedLaplacian(WeightedGraph::from_edges(g.n, g.edges));
}

void BM_WaveRun(benchmark::State& state) {
  const NormalizedLaplacian lap = planted(static_cast<std::size_t>(state.range(0)));
  WaveConfig cfg;
  cfg.t_max = 1024;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(wave_run(lap, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lap.sparse().nonZeros()) * 1024);
}
BENCHMARK(BM_WaveRun)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ClusterByWave(benchmark::State& state) {
  const NormalizedLaplacian lap = planted(static_cast<std::size_t>(state.range(0)));
  WaveConfig cfg;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cluster_by_wave(lap, cfg));
}
BENCHMARK(BM_ClusterByWave)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& state) {
  const NormalizedLaplacian lap = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dense_spectrum(lap, 2));
}
BENCHMARK(BM_DenseSpectrum)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GaussRule(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(standard_rule(Family::kLegendre, l));
    benchmark::DoNotOptimize(standard_rule(Family::kHermite, l));
  }
}
BENCHMARK(BM_GaussRule)->Arg(5)->Arg(20);

void BM_Sobol(benchmark::State& state) {
  const SobolSequence s(40);
  std::vector<double> p(40);
  std::uint64_t i = 0;
  for (auto _ : state) {
    s.point(i++, p);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_Sobol);

void BM_PwrChain(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i + 1 < a.rows(); ++i) a(i, i + 1) = a(i + 1, i) = 0.05;
  const NetworkModel m = linear_builder(a, Vector::Constant(a.rows(), 1.5), Vector::Ones(a.rows()));
  std::vector<std::vector<std::size_t>> clusters(n);
  std::vector<RandomParam> params;
  for (std::size_t i = 0; i < n; ++i) {
    clusters[i] = {i};
    params.push_back({i, Distribution::uniform(1.0, 2.0)});
  }
  const SubsystemDecomposition d = decompose(m, clusters);
  PwrOptions opt;
  opt.tol = 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(pwr_solve(m, d, params, opt));
}
BENCHMARK(BM_PwrChain)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
