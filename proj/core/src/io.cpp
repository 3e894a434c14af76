#include "wavepwr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "wavepwr/error.hpp"

namespace wavepwr {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

// Non-empty lines with comments stripped, paired with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(lineno, line);
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

template <typename T>
T number(const std::string& tok, std::size_t lineno) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw GraphError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
  }
  return v;
}

}  // namespace

EdgeList parse_edge_list(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw GraphError("edge list is empty");
  const auto header = tokens(lines[0].second);
  if (header.size() != 2) throw GraphError("line " + std::to_string(lines[0].first) + ": expected header 'n m'");
  EdgeList out;
  out.n = number<std::size_t>(header[0], lines[0].first);
  const auto m = number<std::size_t>(header[1], lines[0].first);
  if (lines.size() - 1 != m) {
    throw GraphError("edge list declares " + std::to_string(m) + " edges but has " + std::to_string(lines.size() - 1));
  }
  for (std::size_t e = 1; e < lines.size(); ++e) {
    const auto& [lineno, line] = lines[e];
    const auto t = tokens(line);
    if (t.size() != 2 && t.size() != 3) throw GraphError("line " + std::to_string(lineno) + ": expected 'i j w'");
    Edge edge{number<std::size_t>(t[0], lineno), number<std::size_t>(t[1], lineno),
              t.size() == 3 ? number<double>(t[2], lineno) : 1.0};
    if (edge.u >= out.n || edge.v >= out.n) throw GraphError("line " + std::to_string(lineno) + ": node index out of range");
    out.edges.push_back(edge);
  }
  return out;
}

EdgeList read_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_text(path)); }

std::string format_edge_list(std::size_t n, std::span<const Edge> edges) {
  std::string out = std::to_string(n) + ' ' + std::to_string(edges.size()) + '\n';
  for (const auto& e : edges) {
    out += std::to_string(e.u) + ' ' + std::to_string(e.v) + ' ' + CsvWriter::format(e.weight) + '\n';
  }
  return out;
}

Matrix parse_matrix(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw GraphError("matrix file is empty");
  const auto header = tokens(lines[0].second);
  if (header.size() != 1) throw GraphError("line " + std::to_string(lines[0].first) + ": expected n");
  const auto n = number<std::size_t>(header[0], lines[0].first);
  std::vector<double> values;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    for (const auto& t : tokens(lines[l].second)) values.push_back(number<double>(t, lines[l].first));
  }
  if (values.size() != n * n) {
    throw GraphError("matrix file needs " + std::to_string(n * n) + " entries, found " + std::to_string(values.size()));
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * n + j];
  }
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += CsvWriter::format(m(i, j));
    }
    out += '\n';
  }
  return out;
}

WeightedGraph read_graph(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto lines = content_lines(text);
  if (!lines.empty() && tokens(lines[0].second).size() == 1) return WeightedGraph(parse_matrix(text));
  const EdgeList list = parse_edge_list(text);
  return WeightedGraph::from_edges(list.n, list.edges);
}

std::vector<std::uint64_t> read_labels(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
  const nlohmann::json& arr = doc.is_object() ? doc.at("labels") : doc;
  if (!arr.is_array()) throw ConfigError("'" + path.string() + "': labels must be an array");
  std::vector<std::uint64_t> labels;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("'" + path.string() + "': labels must be nonnegative integers");
    }
    labels.push_back(v.get<std::uint64_t>());
  }
  return labels;
}

std::vector<std::vector<std::size_t>> read_clusters(const std::filesystem::path& path) {
  try {
    const auto doc = nlohmann::json::parse(read_text(path));
    return doc.at("clusters").get<std::vector<std::vector<std::size_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw std::invalid_argument("CSV row has wrong column count");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format(values[i]);
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("CSV row has wrong column count");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

std::string CsvWriter::format(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace wavepwr
