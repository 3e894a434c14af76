#include "output.hpp"

#include <fstream>

#include "wavepwr/error.hpp"

namespace wavepwr::cli {

namespace fs = std::filesystem;

OutputSet::OutputSet(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

OutputSet::~OutputSet() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& p : pending_) fs::remove(p.temp, ec);
}

void OutputSet::add(const std::string& name, const std::string& content) {
  Pending p{dir_ / (name + ".partial"), dir_ / name};
  {
    std::ofstream out(p.temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + p.temp.string() + "'");
    pending_.push_back(p);
    out << content;
    out.close();
    if (!out) throw Error("failed writing '" + p.temp.string() + "'");
  }
}

void OutputSet::commit() {
  std::size_t done = 0;
  try {
    for (; done < pending_.size(); ++done) fs::rename(pending_[done].temp, pending_[done].target);
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    for (std::size_t i = 0; i < done; ++i) fs::remove(pending_[i].target, ec);
    throw Error(std::string("cannot commit outputs: ") + e.what());
  }
  committed_ = true;
}

}  // namespace wavepwr::cli
