#pragma once

#include <cstddef>

namespace csnet {

// Half-sample symmetric reflection of i onto [0, n): ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
// Valid for any overshoot.
inline std::size_t symmetric_index(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t k = i % period;
  if (k < 0) k += period;
  return k < static_cast<std::ptrdiff_t>(n) ? static_cast<std::size_t>(k)
                                            : static_cast<std::size_t>(period - 1 - k);
}

}  // namespace csnet
