#include "wavepwr/model_spec.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "wavepwr/config.hpp"
#include "wavepwr/error.hpp"
#include "wavepwr/io.hpp"
#include "wavepwr/models.hpp"

namespace wavepwr {
namespace {

using nlohmann::json;

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from(const json& arr, const char* what) {
  if (!arr.is_array()) throw ConfigError(std::string("model spec: '") + what + "' must be an array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

}  // namespace

void ModelSpec::validate() const {
  const auto n = params.size();
  if (n < 1) throw ConfigError("model spec: no states");
  if (x0.size() != n) throw ConfigError("model spec: x0 length does not match params");
  if (kind == "chain3") {
    if (n != 3) throw ConfigError("model spec: chain3 has exactly 3 states");
  } else if (kind == "kuramoto" || kind == "linear") {
    if (coupling.rows() != n || coupling.cols() != n) throw ConfigError("model spec: coupling must be n x n");
  } else {
    throw ConfigError("model spec: unknown kind '" + kind + "'");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& p : uncertain) {
    if (p.index >= static_cast<std::size_t>(n)) throw ConfigError("model spec: uncertain index out of range");
    if (seen[p.index]) throw ConfigError("model spec: parameter " + std::to_string(p.index) + " listed twice");
    seen[p.index] = true;
    try {
      p.dist.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("model spec: ") + e.what());
    }
  }
}

NetworkModel ModelSpec::build() const {
  validate();
  if (kind == "kuramoto") return kuramoto_builder(coupling, params, x0);
  if (kind == "linear") return linear_builder(coupling, params, x0);
  return chain3_builder(epsilon, params, x0);
}

std::string model_spec_to_json(const ModelSpec& spec) {
  json doc;
  doc["kind"] = spec.kind;
  doc["states"] = spec.size();
  if (spec.kind == "chain3") {
    doc["epsilon"] = spec.epsilon;
  } else {
    json entries = json::array();
    for (Eigen::Index i = 0; i < spec.coupling.rows(); ++i) {
      for (Eigen::Index j = 0; j < spec.coupling.cols(); ++j) {
        if (spec.coupling(i, j) != 0.0) entries.push_back({i, j, spec.coupling(i, j)});
      }
    }
    doc["coupling"] = entries;
  }
  doc["params"] = vector_json(spec.params);
  doc["x0"] = vector_json(spec.x0);
  json unc = json::array();
  for (const auto& p : spec.uncertain) {
    json e{{"index", p.index}};
    if (p.dist.kind == Distribution::Kind::kGaussian) {
      e["distribution"] = "gaussian";
      e["mean"] = p.dist.a;
      e["sigma"] = p.dist.b;
    } else {
      e["distribution"] = "uniform";
      e["lo"] = p.dist.a;
      e["hi"] = p.dist.b;
    }
    unc.push_back(e);
  }
  doc["uncertain"] = unc;
  return doc.dump(2) + "\n";
}

ModelSpec model_spec_from_json(const std::string& text) {
  ModelSpec spec;
  try {
    const json doc = json::parse(text);
    for (const auto& [key, value] : doc.items()) {
      static const char* known[] = {"kind", "states", "epsilon", "coupling", "params", "x0", "uncertain"};
      if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
        throw ConfigError("model spec: unknown key '" + key + "'");
      }
    }
    spec.kind = doc.at("kind").get<std::string>();
    spec.params = vector_from(doc.at("params"), "params");
    const auto n = spec.params.size();
    if (doc.contains("states") && doc["states"].get<Eigen::Index>() != n) {
      throw ConfigError("model spec: 'states' does not match params length");
    }
    spec.x0 = doc.contains("x0") ? vector_from(doc["x0"], "x0") : Vector::Zero(n);
    if (spec.kind == "chain3") {
      spec.epsilon = doc.at("epsilon").get<double>();
    } else {
      spec.coupling = Matrix::Zero(n, n);
      for (const auto& e : doc.at("coupling")) {
        const auto i = e.at(0).get<Eigen::Index>();
        const auto j = e.at(1).get<Eigen::Index>();
        if (i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("model spec: coupling index out of range");
        spec.coupling(i, j) = e.at(2).get<double>();
      }
    }
    if (doc.contains("uncertain")) {
      for (const auto& e : doc["uncertain"]) {
        RandomParam p;
        p.index = e.at("index").get<std::size_t>();
        const auto dist = e.at("distribution").get<std::string>();
        if (dist == "gaussian") {
          p.dist = {Distribution::Kind::kGaussian, e.at("mean").get<double>(), e.at("sigma").get<double>()};
        } else if (dist == "uniform") {
          p.dist = {Distribution::Kind::kUniform, e.at("lo").get<double>(), e.at("hi").get<double>()};
        } else {
          throw ConfigError("model spec: unsupported distribution '" + dist + "'");
        }
        spec.uncertain.push_back(p);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

ModelSpec read_model_spec(const std::filesystem::path& path) { return model_spec_from_json(read_text(path)); }

Distribution parse_distribution(const std::string& text, double nominal) {
  std::istringstream in(text);
  std::string family;
  in >> family;
  std::map<std::string, std::string> opts;
  for (std::string tok; in >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ConfigError("distribution option '" + tok + "' needs key=value");
    opts[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::optional<double> {
    const auto it = opts.find(key);
    if (it == opts.end()) return std::nullopt;
    const double v = parse_double_strict(it->second);
    opts.erase(it);
    return v;
  };
  Distribution d;
  if (family == "gaussian") {
    const double mean = take("mean").value_or(nominal);
    double sigma = 0.0;
    const auto band_it = opts.find("band");
    std::string band = "sigma";
    if (band_it != opts.end()) {
      band = band_it->second;
      opts.erase(band_it);
    }
    if (band != "sigma" && band != "3sigma") throw ConfigError("band must be sigma or 3sigma");
    if (auto s = take("sigma")) {
      sigma = *s;
    } else if (auto rel = take("rel")) {
      sigma = *rel * std::abs(mean);
    } else {
      throw ConfigError("gaussian needs sigma= or rel=");
    }
    if (band == "3sigma") sigma /= 3.0;
    d = {Distribution::Kind::kGaussian, mean, sigma};
  } else if (family == "uniform") {
    const auto lo = take("lo");
    const auto hi = take("hi");
    if (lo && hi) {
      d = {Distribution::Kind::kUniform, *lo, *hi};
    } else if (auto rel = take("rel"); rel && !lo && !hi) {
      const double half = *rel * std::abs(nominal);
      d = {Distribution::Kind::kUniform, nominal - half, nominal + half};
    } else {
      throw ConfigError("uniform needs lo= and hi=, or rel=");
    }
  } else {
    throw ConfigError("unsupported distribution '" + family + "'");
  }
  if (!opts.empty()) throw ConfigError("unknown distribution option '" + opts.begin()->first + "'");
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return d;
}

}  // namespace wavepwr
