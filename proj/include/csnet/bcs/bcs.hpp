#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csnet/bcs/measurement.hpp"
#include "csnet/netcore/tensor.hpp"

namespace csnet {

/// Separable AR(1) block autocorrelation:
///   R[(i,j),(k,l)] = rho^(|i-k| + |j-l|) over row-major pixel indices.
struct Autocorrelation {
  std::size_t block_size = 0;
  double rho = 0.0;
  std::vector<double> matrix;  // B^2 x B^2, row-major

  std::size_t dim() const { return block_size * block_size; }
  double at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }
};

Autocorrelation ar1_autocorrelation(std::size_t block_size, double rho);

// Identity correlation (rho = 0) of the given block size.
Autocorrelation identity_autocorrelation(std::size_t block_size);

/// Linear block estimator Phi~ = R Phi^T (Phi R Phi^T)^-1, B^2 x n_B row-major.
struct ReconstructionMatrix {
  std::size_t block_size = 0;
  std::size_t measurements = 0;
  std::vector<double> entries;

  std::size_t rows() const { return block_size * block_size; }
  double at(std::size_t r, std::size_t c) const { return entries[r * measurements + c]; }
};

// Solved through a Cholesky factorization of the Gram matrix Phi R Phi^T.
// Throws NumericalError if the factorization fails or the estimated condition
// number exceeds 1e12.
ReconstructionMatrix mmse_matrix(const MeasurementMatrix& phi, const Autocorrelation& r);

// y_j = Phi x_j for every block j in row-major block order, [H/B, W/B, n_B].
Tensor<double> block_sample(const Tensor<double>& image, const MeasurementMatrix& phi);

// x_j = Phi~ y_j for every block, reassembled by combine_blocks.
Tensor<double> mmse_initial(const Tensor<double>& measurements, const ReconstructionMatrix& phi_tilde);

// Orthonormal 2D DCT-II on B x B blocks stored row-major.
class Dct2 {
public:
  explicit Dct2(std::size_t block_size);

  std::size_t block_size() const { return n_; }

  void forward(std::span<const double> block, std::span<double> coeffs) const;
  void inverse(std::span<const double> coeffs, std::span<double> block) const;

  // basis()[k*B + n] = alpha_k cos(pi (2n+1) k / 2B).
  const std::vector<double>& basis() const { return basis_; }

private:
  std::size_t n_;
  std::vector<double> basis_;
};

std::vector<double> dct2_forward(std::span<const double> block, std::size_t block_size);
std::vector<double> dct2_inverse(std::span<const double> coeffs, std::size_t block_size);

// Keeps entries with |c| >= tau, zeroes the rest.
void hard_threshold(std::span<double> coeffs, double tau);
std::vector<double> hard_thresholded(std::span<const double> coeffs, double tau);

// Adaptive local Wiener filter over an odd window with symmetric borders:
//   out = mu + max(var - nu, 0) / max(var, nu) * (x - mu),
// nu being the mean local variance over the image.
Tensor<double> wiener_smooth(const Tensor<double>& image, std::size_t window);

struct SplConfig {
  double gamma = 1.0;
  double tau0_fraction = 0.1;
  double tau_decay = 0.95;
  std::size_t max_iters = 200;
  double rel_tol = 1e-4;
  std::size_t wiener_window = 3;  // 0 disables smoothing

  void validate() const;
};

struct SplIteration {
  std::size_t iteration = 0;  // 1-based
  double tau = 0.0;
  double residual = 0.0;  // ||y - Phi x|| after the final projection
  double change = 0.0;    // ||x_new - x|| / ||x||
};

struct SplResult {
  Tensor<double> initial;
  Tensor<double> image;
  double initial_residual = 0.0;
  std::vector<SplIteration> log;
};

/// Smoothed projected Landweber recovery, starting from the MMSE estimate.
/// Each iteration: optional Wiener smoothing, a Landweber projection per
/// block, DCT hard thresholding at tau_i = tau0 * decay^i, and a second
/// projection. Stops when the relative change falls below rel_tol.
SplResult spl_reconstruct(const Tensor<double>& measurements, const MeasurementMatrix& phi,
                          const ReconstructionMatrix& phi_tilde, const SplConfig& config);

SplResult spl_reconstruct(const Tensor<double>& measurements, const MeasurementMatrix& phi,
                          const Autocorrelation& r, const SplConfig& config);

// ||y - Phi x|| summed over all blocks.
double measurement_residual(const Tensor<double>& measurements, const MeasurementMatrix& phi,
                            const Tensor<double>& image);

}  // namespace csnet
