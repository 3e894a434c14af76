#include "wavepwr/generators.hpp"

#include <numeric>
#include <stdexcept>

#include "wavepwr/rng.hpp"

namespace wavepwr {

PlantedGraph stochastic_block_model(const std::vector<std::size_t>& blocks, const Matrix& prob,
                                    std::uint64_t seed) {
  if (blocks.empty()) throw std::invalid_argument("at least one block required");
  const auto nb = static_cast<Eigen::Index>(blocks.size());
  if (prob.rows() != nb || prob.cols() != nb) {
    throw std::invalid_argument("probability matrix must be blocks x blocks");
  }
  for (std::size_t b : blocks) {
    if (b < 2) throw std::invalid_argument("block too small: every block needs at least 2 nodes");
  }
  PlantedGraph g;
  g.n = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  g.labels.reserve(g.n);
  for (std::size_t b = 0; b < blocks.size(); ++b) g.labels.insert(g.labels.end(), blocks[b], b);

  Rng rng(derive_seed(seed, "planted-partition"));
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = u + 1; v < g.n; ++v) {
      const double p = prob(static_cast<Eigen::Index>(g.labels[u]), static_cast<Eigen::Index>(g.labels[v]));
      if (rng.bernoulli(p)) g.edges.push_back({u, v, 1.0});
    }
  }
  return g;
}

PlantedGraph planted_partition(const std::vector<std::size_t>& blocks, double p_in, double p_out,
                               std::uint64_t seed) {
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
    throw std::invalid_argument("edge probabilities must lie in [0, 1]");
  }
  const auto nb = static_cast<Eigen::Index>(blocks.size());
  Matrix prob = Matrix::Constant(nb, nb, p_out);
  prob.diagonal().setConstant(p_in);
  return stochastic_block_model(blocks, prob, seed);
}

double expected_edge_count(const std::vector<std::size_t>& blocks, double p_in, double p_out) {
  double inside = 0.0;
  double total_nodes = 0.0;
  for (std::size_t b : blocks) {
    const auto s = static_cast<double>(b);
    inside += s * (s - 1.0) / 2.0;
    total_nodes += s;
  }
  const double all = total_nodes * (total_nodes - 1.0) / 2.0;
  return inside * p_in + (all - inside) * p_out;
}

KuramotoBenchmark kuramoto_benchmark(const KuramotoBenchmarkOptions& options, std::uint64_t seed) {
  if (options.pairs < 3) throw std::invalid_argument("ring needs at least 3 pairs");
  const std::size_t n = 2 * options.pairs;
  const auto ni = static_cast<Eigen::Index>(n);
  KuramotoBenchmark b;
  b.coupling = Matrix::Zero(ni, ni);
  b.omega.resize(ni);
  b.x0.resize(ni);

  Rng rng(derive_seed(seed, "kuramoto-benchmark"));
  for (std::size_t i = 0; i < n; ++i) b.omega(static_cast<Eigen::Index>(i)) = rng.uniform(options.omega_lo, options.omega_hi);
  for (std::size_t i = 0; i < n; ++i) b.x0(static_cast<Eigen::Index>(i)) = rng.uniform(0.0, options.phase_hi);

  for (std::size_t m = 0; m < options.pairs; ++m) {
    const auto a = static_cast<Eigen::Index>(2 * m);
    b.coupling(a, a + 1) = b.coupling(a + 1, a) = options.intra;
    b.pair_labels.push_back(m);
    b.pair_labels.push_back(m);
    b.uncertain.push_back(2 * m);
  }
  // One link from each pair to the next around the ring; endpoints drawn per link.
  for (std::size_t m = 0; m < options.pairs; ++m) {
    const std::size_t next = (m + 1) % options.pairs;
    const auto u = static_cast<Eigen::Index>(2 * m + (rng.next() & 1U));
    const auto v = static_cast<Eigen::Index>(2 * next + (rng.next() & 1U));
    b.coupling(u, v) = b.coupling(v, u) = options.inter;
  }
  return b;
}

}  // namespace wavepwr
