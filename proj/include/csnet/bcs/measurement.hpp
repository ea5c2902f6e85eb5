#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csnet/netcore/rng.hpp"

namespace csnet {

/// n_B x B^2 block measurement matrix, row-major. Row k applied to a block
/// flattened row-major gives measurement k.
struct MeasurementMatrix {
  std::size_t block_size = 0;
  std::size_t rows = 0;
  std::vector<double> entries;

  MeasurementMatrix() = default;
  MeasurementMatrix(std::size_t rows_, std::size_t block_size_);

  std::size_t cols() const { return block_size * block_size; }
  double& at(std::size_t r, std::size_t c) { return entries[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return entries[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {entries.data() + r * cols(), cols()}; }

  friend bool operator==(const MeasurementMatrix&, const MeasurementMatrix&) = default;
};

// I.i.d. standard Gaussian entries drawn row-major from rng.gaussian(). With
// orthonormalize the rows are replaced by an orthonormal basis of their span
// (modified Gram-Schmidt, two passes).
MeasurementMatrix make_gaussian_matrix(std::size_t rows, std::size_t block_size, Rng& rng, bool orthonormalize);

// CSMX file: "CSMX", u32 version 1, u32 n_B, u32 B^2, then n_B*B^2 f64, all
// little-endian.
void save_matrix(const MeasurementMatrix& matrix, const std::string& path);
MeasurementMatrix load_matrix(const std::string& path);

}  // namespace csnet
