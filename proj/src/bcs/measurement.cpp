#include "csnet/bcs/measurement.hpp"

#include <cmath>

#include "csnet/errors.hpp"

namespace csnet {

MeasurementMatrix::MeasurementMatrix(std::size_t rows_, std::size_t block_size_)
    : block_size(block_size_), rows(rows_), entries(rows_ * block_size_ * block_size_, 0.0) {}

namespace {

// One modified Gram-Schmidt sweep over the rows.
void orthonormalize_rows(MeasurementMatrix& m) {
  const std::size_t n = m.cols();
  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = &m.entries[r * n];
    for (std::size_t q = 0; q < r; ++q) {
      const double* prev = &m.entries[q * n];
      double dot = 0.0;
      for (std::size_t c = 0; c < n; ++c) dot += row[c] * prev[c];
      for (std::size_t c = 0; c < n; ++c) row[c] -= dot * prev[c];
    }
    double norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) norm += row[c] * row[c];
    norm = std::sqrt(norm);
    if (!(norm > 1e-12)) throw NumericalError("measurement rows are linearly dependent");
    for (std::size_t c = 0; c < n; ++c) row[c] /= norm;
  }
}

}  // namespace

MeasurementMatrix make_gaussian_matrix(std::size_t rows, std::size_t block_size, Rng& rng, bool orthonormalize) {
  if (block_size < 1) throw ConfigError("block size must be positive");
  if (rows < 1 || rows > block_size * block_size) {
    throw ConfigError("n_B=" + std::to_string(rows) + " must lie in [1, B^2=" +
                      std::to_string(block_size * block_size) + "]");
  }
  MeasurementMatrix m(rows, block_size);
  for (double& v : m.entries) v = rng.gaussian();
  if (orthonormalize) {
    // Second pass restores orthogonality lost to rounding in the first.
    orthonormalize_rows(m);
    orthonormalize_rows(m);
  }
  return m;
}

}  // namespace csnet
