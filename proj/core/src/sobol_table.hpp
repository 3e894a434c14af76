#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace wavepwr::detail {

inline constexpr std::size_t kSobolMaxDim = 256;
inline constexpr std::size_t kSobolMaxDegree = 11;

struct SobolDimension {
  std::uint32_t poly;    // primitive polynomial, leading and constant bits included
  std::uint32_t degree;
  std::array<std::uint32_t, kSobolMaxDegree> m;  // initial direction numbers
};

extern const std::array<SobolDimension, kSobolMaxDim> kSobolTable;

}  // namespace wavepwr::detail
