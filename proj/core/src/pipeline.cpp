#include "wavepwr/pipeline.hpp"

#include <algorithm>
#include <limits>

#include "wavepwr/graph.hpp"

namespace wavepwr {
namespace {

constexpr double kZeroEigenvalue = 1e-9;

Matrix induced(const Matrix& w, const std::vector<std::size_t>& nodes) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Matrix sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = w(static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(b)]));
    }
  }
  return sub;
}

std::vector<std::vector<std::size_t>> group(const std::vector<std::size_t>& labels) {
  std::size_t count = 0;
  for (auto l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<std::size_t>> groups(count);
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  return groups;
}

struct Split {
  double fiedler = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

Split bisect(const Matrix& w, const std::vector<std::size_t>& nodes) {
  Split s;
  if (nodes.size() < 2) return s;
  const Matrix sub = induced(w, nodes);
  const auto parts = connected_components(sub);
  if (*std::max_element(parts.begin(), parts.end()) > 0) {
    s.fiedler = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) (parts[a] == parts[0] ? s.left : s.right).push_back(nodes[a]);
    return s;
  }
  const NormalizedLaplacian lap{WeightedGraph(sub)};
  const SpectrumReport rep = dense_spectrum(lap, 2);
  s.fiedler = rep.eigenvalues[1];
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    (rep.eigenvectors(static_cast<Eigen::Index>(a), 1) >= 0.0 ? s.left : s.right).push_back(nodes[a]);
  }
  return s;
}

}  // namespace

SpectralPartition spectral_partition(const Matrix& weights, GapMode mode) {
  if (weights.rows() == 1 && weights.cols() == 1) {
    SpectralPartition single;
    single.eigenvalues = {0.0};
    single.gap_ratio = std::numeric_limits<double>::infinity();
    single.components = 1;
    single.zero_multiplicity = 1;
    single.clusters = {{0}};
    single.assignment.labels = {0};
    single.assignment.k_used = 1;
    return single;
  }
  const Matrix w = similarity_weights(weights);
  const auto n = static_cast<std::size_t>(w.rows());
  SpectralPartition out;
  auto clusters = group(connected_components(w));
  out.components = clusters.size();
  for (const auto& comp : clusters) {
    if (comp.size() == 1) {
      out.eigenvalues.push_back(0.0);
      continue;
    }
    const NormalizedLaplacian lap{WeightedGraph(induced(w, comp))};
    const auto ev = dense_eigenvalues(lap);
    out.eigenvalues.insert(out.eigenvalues.end(), ev.begin(), ev.end());
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  for (double& v : out.eigenvalues) {
    if (std::abs(v) < kZeroEigenvalue) {
      v = 0.0;
      ++out.zero_multiplicity;
    }
  }
  out.gap_index = detect_spectral_gap(out.eigenvalues, mode);
  out.gap_ratio = gap_ratio(out.eigenvalues, out.gap_index, mode);

  const std::size_t target = std::max(out.gap_index, out.components);
  std::vector<Split> splits;
  for (const auto& c : clusters) splits.push_back(bisect(w, c));
  while (clusters.size() < target) {
    std::size_t best = clusters.size();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (clusters[c].size() < 2) continue;
      if (best == clusters.size() || splits[c].fiedler < splits[best].fiedler) best = c;
    }
    if (best == clusters.size()) break;
    Split s = std::move(splits[best]);
    clusters[best] = std::move(s.left);
    clusters.push_back(std::move(s.right));
    splits[best] = bisect(w, clusters[best]);
    splits.push_back(bisect(w, clusters.back()));
  }
  std::sort(clusters.begin(), clusters.end());
  out.assignment.labels.assign(n, 0);
  out.assignment.k_used = out.gap_index;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t i : clusters[c]) out.assignment.labels[i] = c;
  }
  out.clusters = std::move(clusters);
  return out;
}

NetworkDecomposition decompose_network(const NetworkModel& model, const DecomposeOptions& options) {
  NetworkDecomposition out;
  const Trajectory traj =
      integrate(model, model.nominal_state(), model.nominal_params(), options.t0, options.horizon, options.dt);
  out.jacobian = time_avg_jacobian(model, traj, model.nominal_params());
  out.similarity = model.state_dim() == 1 ? Matrix::Zero(1, 1) : similarity_weights(out.jacobian);
  out.partition = spectral_partition(out.similarity, options.gap_mode);
  out.subsystems = decompose(model, out.partition.clusters);
  return out;
}

}  // namespace wavepwr
