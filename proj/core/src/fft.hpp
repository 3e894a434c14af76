#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wavepwr::detail {

/// Real-to-complex DFT of a fixed length, backed by FFTW. Not thread-safe;
/// use one instance per thread.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// Returns bins() coefficients, valid until the next call.
  std::span<const std::complex<double>> forward(std::span<const double> input);

 private:
  std::size_t n_;
  double* in_;
  void* out_;
  void* plan_;
};

}  // namespace wavepwr::detail
