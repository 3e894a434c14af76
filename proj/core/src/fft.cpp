#include "fft.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace wavepwr::detail {
namespace {
// FFTW planner calls are not reentrant.
std::mutex planner_mutex;
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RealFft: length must be at least 2");
  std::lock_guard lock(planner_mutex);
  in_ = fftw_alloc_real(n);
  auto* out = fftw_alloc_complex(n / 2 + 1);
  out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

std::span<const std::complex<double>> RealFft::forward(std::span<const double> input) {
  if (input.size() != n_) throw std::invalid_argument("RealFft: input length mismatch");
  std::copy(input.begin(), input.end(), in_);
  fftw_execute(static_cast<fftw_plan>(plan_));
  // fftw_complex is layout-compatible with std::complex<double>.
  return {reinterpret_cast<const std::complex<double>*>(out_), bins()};
}

}  // namespace wavepwr::detail
