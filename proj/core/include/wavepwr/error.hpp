#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavepwr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph input: asymmetric weights, negative weights, isolated nodes.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Dense eigensolver did not converge.
class EigenError : public Error {
 public:
  EigenError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// The wave iteration left the bounded regime (non-finite or runaway values).
class InstabilityError : public Error {
 public:
  explicit InstabilityError(std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Fewer spectral peaks than requested could be separated from the trace.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// The fixed-step integrator produced a non-finite state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A subsystem collocation solve diverged inside a relaxation sweep.
class PwrError : public Error {
 public:
  PwrError(std::size_t subsystem, std::size_t iteration, std::size_t grid_point);
  std::size_t subsystem() const { return subsystem_; }
  std::size_t iteration() const { return iteration_; }
  std::size_t grid_point() const { return grid_point_; }

 private:
  std::size_t subsystem_;
  std::size_t iteration_;
  std::size_t grid_point_;
};

/// One or more Monte Carlo samples failed to integrate.
class SampleError : public Error {
 public:
  explicit SampleError(std::vector<std::size_t> failed);
  const std::vector<std::size_t>& failed_samples() const { return failed_; }

 private:
  std::vector<std::size_t> failed_;
};

/// Invalid or unreadable configuration / input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavepwr
