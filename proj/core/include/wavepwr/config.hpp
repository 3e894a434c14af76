#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavepwr {

/// Flat key-value configuration with [section] headers and '#' comments.
/// Keys before the first header belong to the "" section.
class IniConfig {
 public:
  using Schema = std::map<std::string, std::vector<std::string>>;

  static IniConfig parse(std::string_view text, std::string origin = "<config>");
  static IniConfig load(const std::filesystem::path& path);

  /// Throws ConfigError on any section or key outside the schema.
  void check(const Schema& schema) const;

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> find(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  /// Comma-separated list, entries trimmed, empties dropped.
  std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

  const std::string& origin() const { return origin_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& why) const;
};

double parse_double_strict(std::string_view text);
std::uint64_t parse_uint_strict(std::string_view text);

}  // namespace wavepwr
