#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "csnet/bcs/bcs.hpp"
#include "csnet/netcore/blocks.hpp"

namespace csnet {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> view(const MeasurementMatrix& phi) {
  return {phi.entries.data(), static_cast<Eigen::Index>(phi.rows), static_cast<Eigen::Index>(phi.cols())};
}

void require_tiled(const Tensor<double>& image, std::size_t block_size) {
  if (image.rank() != 3 || image.dim(2) != 1) {
    throw DimensionError("expected a [H,W,1] image, got " + shape_string(image.shape()));
  }
  if (image.dim(0) % block_size != 0 || image.dim(1) % block_size != 0) {
    throw GeometryError("image " + shape_string(image.shape()) + " is not a multiple of block size " +
                        std::to_string(block_size));
  }
}

}  // namespace

Autocorrelation ar1_autocorrelation(std::size_t block_size, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
  Autocorrelation r{block_size, rho, {}};
  const std::size_t n = r.dim();
  r.matrix.assign(n * n, 0.0);
  std::vector<double> powers(2 * block_size, 1.0);
  for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * rho;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = a / block_size, j = a % block_size;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t k = b / block_size, l = b % block_size;
      const std::size_t dist = (i > k ? i - k : k - i) + (j > l ? j - l : l - j);
      r.matrix[a * n + b] = powers[dist];
    }
  }
  return r;
}

Autocorrelation identity_autocorrelation(std::size_t block_size) { return ar1_autocorrelation(block_size, 0.0); }

ReconstructionMatrix mmse_matrix(const MeasurementMatrix& phi, const Autocorrelation& r) {
  if (r.block_size != phi.block_size) throw DimensionError("autocorrelation and measurement block sizes differ");
  const auto p = view(phi);
  const Eigen::Map<const RowMatrix> rm(r.matrix.data(), static_cast<Eigen::Index>(r.dim()),
                                       static_cast<Eigen::Index>(r.dim()));
  const RowMatrix phi_r = p * rm;                      // n_B x B^2 = Phi R
  const RowMatrix gram = phi_r * p.transpose();        // n_B x n_B = Phi R Phi^T
  Eigen::LLT<RowMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw NumericalError("Phi R Phi^T is not positive definite");
  const double rcond = llt.rcond();
  if (!(rcond > 1e-12)) {
    throw NumericalError("Phi R Phi^T is ill-conditioned (condition estimate " + std::to_string(1.0 / rcond) + ")");
  }
  // (Phi R Phi^T)^-1 Phi R is n_B x B^2; its transpose is R Phi^T (Phi R Phi^T)^-1.
  const RowMatrix solved = llt.solve(phi_r);
  ReconstructionMatrix out{phi.block_size, phi.rows, std::vector<double>(phi.rows * phi.cols())};
  Eigen::Map<RowMatrix>(out.entries.data(), static_cast<Eigen::Index>(phi.cols()),
                        static_cast<Eigen::Index>(phi.rows)) = solved.transpose();
  return out;
}

Tensor<double> block_sample(const Tensor<double>& image, const MeasurementMatrix& phi) {
  require_tiled(image, phi.block_size);
  const Tensor<double> blocks = split_blocks(image, phi.block_size);
  const std::size_t count = blocks.dim(0) * blocks.dim(1);
  Tensor<double> out({blocks.dim(0), blocks.dim(1), phi.rows});
  const Eigen::Map<const RowMatrix> x(blocks.data(), static_cast<Eigen::Index>(count),
                                      static_cast<Eigen::Index>(phi.cols()));
  Eigen::Map<RowMatrix> y(out.data(), static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(phi.rows));
  y.noalias() = x * view(phi).transpose();
  return out;
}

Tensor<double> mmse_initial(const Tensor<double>& measurements, const ReconstructionMatrix& phi_tilde) {
  if (measurements.rank() != 3 || measurements.dim(2) != phi_tilde.measurements) {
    throw DimensionError("measurements " + shape_string(measurements.shape()) + " do not carry n_B=" +
                         std::to_string(phi_tilde.measurements) + " channels");
  }
  const std::size_t count = measurements.dim(0) * measurements.dim(1);
  const Eigen::Map<const RowMatrix> y(measurements.data(), static_cast<Eigen::Index>(count),
                                      static_cast<Eigen::Index>(phi_tilde.measurements));
  const Eigen::Map<const RowMatrix> pt(phi_tilde.entries.data(), static_cast<Eigen::Index>(phi_tilde.rows()),
                                       static_cast<Eigen::Index>(phi_tilde.measurements));
  Tensor<double> vectors({measurements.dim(0), measurements.dim(1), phi_tilde.rows()});
  Eigen::Map<RowMatrix>(vectors.data(), static_cast<Eigen::Index>(count),
                        static_cast<Eigen::Index>(phi_tilde.rows())).noalias() = y * pt.transpose();
  return combine_blocks(vectors, phi_tilde.block_size);
}

}  // namespace csnet
