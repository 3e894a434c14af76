#include "wavepwr/partition.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace wavepwr {

std::size_t ClusterAssignment::cluster_count() const {
  const auto canon = canonical_labels(labels);
  return canon.empty() ? 0 : *std::max_element(canon.begin(), canon.end()) + 1;
}

ClusterAssignment sign_cluster(const Matrix& eigenvectors) {
  const auto k = static_cast<std::size_t>(eigenvectors.cols());
  if (k > 63) {
    throw std::invalid_argument("sign_cluster supports at most 63 eigenvectors");
  }
  ClusterAssignment out;
  out.k_used = k;
  out.labels.assign(static_cast<std::size_t>(eigenvectors.rows()), 0);
  for (Eigen::Index i = 0; i < eigenvectors.rows(); ++i) {
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (eigenvectors(i, static_cast<Eigen::Index>(j)) >= 0.0) code |= std::uint64_t{1} << j;
    }
    out.labels[static_cast<std::size_t>(i)] = code;
  }
  return out;
}

std::vector<std::size_t> canonical_labels(std::span<const std::uint64_t> labels) {
  std::map<std::uint64_t, std::size_t> seen;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (auto l : labels) {
    auto [it, inserted] = seen.try_emplace(l, seen.size());
    out.push_back(it->second);
  }
  return out;
}

bool same_partition(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return a.size() == b.size() && canonical_labels(a) == canonical_labels(b);
}

namespace {

// Maximum-weight assignment on a square matrix (Hungarian method, O(m^3)).
double max_assignment(const std::vector<std::vector<double>>& gain) {
  const std::size_t m = gain.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<bool> used(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = -gain[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) total += gain[p[j] - 1][j - 1];
  }
  return total;
}

}  // namespace

double partition_agreement(std::span<const std::uint64_t> predicted,
                           std::span<const std::uint64_t> reference) {
  if (predicted.size() != reference.size()) {
    throw std::invalid_argument("partition_agreement: size mismatch");
  }
  if (predicted.empty()) return 1.0;
  const auto a = canonical_labels(predicted);
  const auto b = canonical_labels(reference);
  const std::size_t ka = *std::max_element(a.begin(), a.end()) + 1;
  const std::size_t kb = *std::max_element(b.begin(), b.end()) + 1;
  const std::size_t m = std::max(ka, kb);
  std::vector<std::vector<double>> gain(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) gain[a[i]][b[i]] += 1.0;
  return max_assignment(gain) / static_cast<double>(predicted.size());
}

}  // namespace wavepwr
