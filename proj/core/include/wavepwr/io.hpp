#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wavepwr/graph.hpp"
#include "wavepwr/partition.hpp"

namespace wavepwr {

/// Edge-list text: header line "n m", then m lines "i j w" (0-based,
/// undirected, each edge once; w defaults to 1). '#' starts a comment.
struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

EdgeList parse_edge_list(const std::string& text);
EdgeList read_edge_list(const std::filesystem::path& path);
std::string format_edge_list(std::size_t n, std::span<const Edge> edges);

/// Dense whitespace matrix with n on the first line.
Matrix parse_matrix(const std::string& text);
std::string format_matrix(const Matrix& m);

/// Either format: a one-token first line selects the dense matrix reader.
WeightedGraph read_graph(const std::filesystem::path& path);

/// Reads {"labels": [...]} or a bare JSON array of nonnegative integers.
std::vector<std::uint64_t> read_labels(const std::filesystem::path& path);

/// Explicit decomposition: {"clusters": [[states...], ...]}.
std::vector<std::vector<std::size_t>> read_clusters(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);

/// Fixed-precision CSV writer: round-trip doubles, no locale dependence.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(std::span<const double> values);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

  static std::string format(double value);

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace wavepwr
