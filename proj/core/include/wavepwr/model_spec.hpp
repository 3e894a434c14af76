#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavepwr/dynet.hpp"
#include "wavepwr/quadrature.hpp"

namespace wavepwr {

/// Serializable description of a built-in network model and its
/// uncertain parameters.
struct ModelSpec {
  std::string kind;  // "kuramoto", "linear" or "chain3"
  Matrix coupling;   // K for kuramoto, A for linear; unused for chain3
  double epsilon = 0.0;
  Vector params;     // nominal omega or decay rates
  Vector x0;
  std::vector<RandomParam> uncertain;

  void validate() const;
  NetworkModel build() const;
  std::size_t size() const { return static_cast<std::size_t>(params.size()); }
};

std::string model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& text);
ModelSpec read_model_spec(const std::filesystem::path& path);

/// Parses "gaussian rel=0.2", "gaussian sigma=0.1", "gaussian rel=0.2 band=3sigma"
/// or "uniform lo=1 hi=2" around a nominal value. "gaussian mean=.. sigma=.."
/// and "uniform rel=0.1" (nominal +- 10%) are also accepted.
Distribution parse_distribution(const std::string& text, double nominal);

}  // namespace wavepwr
