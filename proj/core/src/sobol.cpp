#include <bit>
#include <stdexcept>

#include "sobol_table.hpp"
#include "wavepwr/sampling.hpp"

namespace wavepwr {

SobolSequence::SobolSequence(std::size_t dims) : dims_(dims), v_(dims * kBits) {
  if (dims == 0 || dims > max_dims()) {
    throw std::invalid_argument("Sobol dimension must be in [1, " + std::to_string(max_dims()) + "]");
  }
  for (std::size_t d = 0; d < dims; ++d) {
    std::uint32_t* v = &v_[d * kBits];
    const auto& entry = detail::kSobolTable[d];
    const unsigned s = entry.degree;
    if (s == 0) {
      for (unsigned j = 0; j < kBits; ++j) v[j] = 1;
    } else {
      for (unsigned j = 0; j < s; ++j) v[j] = entry.m[j];
      for (unsigned j = s; j < kBits; ++j) {
        std::uint32_t next = v[j - s] ^ (v[j - s] << s);
        for (unsigned k = 1; k < s; ++k) {
          if ((entry.poly >> (s - k)) & 1U) next ^= v[j - k] << k;
        }
        v[j] = next;
      }
    }
    for (unsigned j = 0; j < kBits; ++j) v[j] <<= (kBits - 1 - j);
  }
}

std::size_t SobolSequence::max_dims() { return detail::kSobolMaxDim; }

void SobolSequence::point(std::uint64_t i, std::span<double> out) const {
  if (out.size() < dims_) throw std::invalid_argument("Sobol output span too short");
  const std::uint64_t n = i + 1;
  const std::uint64_t gray = n ^ (n >> 1);
  if (gray >> kBits) throw std::out_of_range("Sobol index exceeds 2^32 points");
  for (std::size_t d = 0; d < dims_; ++d) {
    std::uint32_t x = 0;
    std::uint64_t g = gray;
    while (g) {
      const int j = std::countr_zero(g);
      x ^= v_[d * kBits + static_cast<std::size_t>(j)];
      g &= g - 1;
    }
    out[d] = static_cast<double>(x) * 0x1.0p-32;
  }
}

}  // namespace wavepwr
