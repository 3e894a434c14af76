#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wavepwr::cli {

/// Files written to temporaries and renamed into place only on commit().
/// Anything not committed, or committed only partially, is removed.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  ~OutputSet();
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  void add(const std::string& name, const std::string& content);
  void commit();
  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Pending {
    std::filesystem::path temp;
    std::filesystem::path target;
  };
  std::filesystem::path dir_;
  std::vector<Pending> pending_;
  bool committed_ = false;
};

}  // namespace wavepwr::cli
