#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "wavepwr/graph.hpp"

namespace wavepwr::testing {

inline WeightedGraph path_graph(std::size_t n, double w = 1.0) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return WeightedGraph::from_edges(n, edges);
}

inline WeightedGraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

inline WeightedGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return WeightedGraph::from_edges(n, edges);
}

/// Two triangles {0,1,2} and {3,4,5}, optionally joined by a bridge 2-3.
inline WeightedGraph two_triangles(double bridge) {
  std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  if (bridge > 0.0) edges.push_back({2, 3, bridge});
  return WeightedGraph::from_edges(6, edges);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wavepwr_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace wavepwr::testing
