#include "wavepwr/config.hpp"

#include <algorithm>
#include <charconv>

#include "wavepwr/error.hpp"
#include "wavepwr/io.hpp"

namespace wavepwr {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double_strict(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_uint_strict(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

IniConfig IniConfig::parse(std::string_view text, std::string origin) {
  IniConfig cfg;
  cfg.origin_ = std::move(origin);
  std::string section;
  cfg.sections_[section];
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = cfg.origin_ + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where + "empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(where + "empty key");
    auto [it, inserted] = cfg.sections_[section].emplace(key, Entry{std::string(trim(line.substr(eq + 1))), lineno});
    if (!inserted) throw ConfigError(where + "duplicate key '" + key + "'");
  }
  return cfg;
}

IniConfig IniConfig::load(const std::filesystem::path& path) { return parse(read_text(path), path.string()); }

void IniConfig::check(const Schema& schema) const {
  for (const auto& [section, entries] : sections_) {
    const auto allowed = schema.find(section);
    if (allowed == schema.end()) {
      if (entries.empty() && section.empty()) continue;
      throw ConfigError(origin_ + ": unknown section [" + section + "]");
    }
    for (const auto& [key, entry] : entries) {
      if (std::find(allowed->second.begin(), allowed->second.end(), key) == allowed->second.end()) {
        throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'" +
                          (section.empty() ? std::string() : " in [" + section + "]"));
      }
    }
  }
}

bool IniConfig::has(const std::string& section, const std::string& key) const { return find(section, key).has_value(); }

std::optional<std::string> IniConfig::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second.value;
}

void IniConfig::fail(const std::string& section, const std::string& key, const std::string& why) const {
  throw ConfigError(origin_ + ": [" + section + "] " + key + ": " + why);
}

std::string IniConfig::get(const std::string& section, const std::string& key) const {
  auto v = find(section, key);
  if (!v) fail(section, key, "missing required key");
  return *v;
}

std::string IniConfig::get(const std::string& section, const std::string& key, const std::string& fallback) const {
  return find(section, key).value_or(fallback);
}

double IniConfig::get_double(const std::string& section, const std::string& key, double fallback) const {
  const auto v = find(section, key);
  if (!v) return fallback;
  try {
    return parse_double_strict(*v);
  } catch (const ConfigError& e) {
    fail(section, key, e.what());
  }
}

std::uint64_t IniConfig::get_uint(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  const auto v = find(section, key);
  if (!v) return fallback;
  try {
    return parse_uint_strict(*v);
  } catch (const ConfigError& e) {
    fail(section, key, e.what());
  }
}

bool IniConfig::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const auto v = find(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "no" || *v == "0") return false;
  fail(section, key, "expected true or false, got '" + *v + "'");
}

std::vector<std::string> IniConfig::get_list(const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  const auto v = find(section, key);
  if (!v) return out;
  std::string_view rest = *v;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace wavepwr
