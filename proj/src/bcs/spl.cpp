#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "csnet/bcs/bcs.hpp"
#include "csnet/netcore/blocks.hpp"

namespace csnet {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMatrix>;
using RowVectorMap = Eigen::Map<Eigen::RowVectorXd>;
using ConstRowVectorMap = Eigen::Map<const Eigen::RowVectorXd>;

// Image held as one row per block: [blocks, B^2].
struct BlockImage {
  std::size_t grid_h = 0;
  std::size_t grid_w = 0;
  Tensor<double> rows;

  std::size_t count() const { return grid_h * grid_w; }
  double* block(std::size_t j) { return rows.data() + j * rows.dim(2); }
  const double* block(std::size_t j) const { return rows.data() + j * rows.dim(2); }
};

BlockImage to_blocks(const Tensor<double>& image, std::size_t b) {
  Tensor<double> rows = split_blocks(image, b);
  return {rows.dim(0), rows.dim(1), std::move(rows)};
}

// x_j += (1/gamma) Phi^T (y_j - Phi x_j) for every block.
void landweber(BlockImage& x, const Tensor<double>& y, const ConstRowMap& phi, double step) {
  const auto nb = phi.rows();
  const auto n = phi.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(x.count()); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    RowVectorMap xj(x.block(j), n);
    const ConstRowVectorMap yj(y.data() + j * static_cast<std::size_t>(nb), nb);
    const Eigen::RowVectorXd residual = yj - xj * phi.transpose();
    xj.noalias() += step * (residual * phi);
  }
}

double residual_norm(const BlockImage& x, const Tensor<double>& y, const ConstRowMap& phi) {
  const auto count = static_cast<Eigen::Index>(x.count());
  const ConstRowMap xs(x.rows.data(), count, phi.cols());
  const ConstRowMap ys(y.data(), count, phi.rows());
  return (ys - xs * phi.transpose()).norm();
}

double max_abs_coefficient(const BlockImage& x, const Dct2& dct) {
  const std::size_t n = x.rows.dim(2);
  std::vector<double> coeffs(n);
  double best = 0.0;
  for (std::size_t j = 0; j < x.count(); ++j) {
    dct.forward({x.block(j), n}, coeffs);
    for (double c : coeffs) best = std::max(best, std::abs(c));
  }
  return best;
}

void threshold_blocks(BlockImage& x, const Dct2& dct, double tau) {
  const std::size_t n = x.rows.dim(2);
#pragma omp parallel
  {
    std::vector<double> coeffs(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(x.count()); ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      dct.forward({x.block(j), n}, coeffs);
      hard_threshold(coeffs, tau);
      dct.inverse(coeffs, {x.block(j), n});
    }
  }
}

void check_measurements(const Tensor<double>& y, const MeasurementMatrix& phi) {
  if (y.rank() != 3 || y.dim(2) != phi.rows) {
    throw DimensionError("measurements " + shape_string(y.shape()) + " do not carry n_B=" +
                         std::to_string(phi.rows) + " channels");
  }
}

}  // namespace

void SplConfig::validate() const {
  if (!(gamma > 0.0)) throw ConfigError("SPL gamma must be positive");
  if (!(tau0_fraction >= 0.0)) throw ConfigError("SPL tau0_fraction must be nonnegative");
  if (!(tau_decay > 0.0 && tau_decay < 1.0)) throw ConfigError("SPL tau_decay must lie in (0, 1)");
  if (max_iters < 1) throw ConfigError("SPL max_iters must be at least 1");
  if (!(rel_tol >= 0.0)) throw ConfigError("SPL rel_tol must be nonnegative");
  if (wiener_window != 0 && (wiener_window < 3 || wiener_window % 2 == 0)) {
    throw ConfigError("SPL wiener_window must be 0 or an odd size of at least 3");
  }
}

double measurement_residual(const Tensor<double>& measurements, const MeasurementMatrix& phi,
                            const Tensor<double>& image) {
  check_measurements(measurements, phi);
  const BlockImage x = to_blocks(image, phi.block_size);
  const ConstRowMap p(phi.entries.data(), static_cast<Eigen::Index>(phi.rows), static_cast<Eigen::Index>(phi.cols()));
  return residual_norm(x, measurements, p);
}

SplResult spl_reconstruct(const Tensor<double>& measurements, const MeasurementMatrix& phi,
                          const ReconstructionMatrix& phi_tilde, const SplConfig& config) {
  config.validate();
  check_measurements(measurements, phi);
  const std::size_t b = phi.block_size;
  const ConstRowMap p(phi.entries.data(), static_cast<Eigen::Index>(phi.rows), static_cast<Eigen::Index>(phi.cols()));
  const Dct2 dct(b);
  const double step = 1.0 / config.gamma;

  SplResult result;
  result.initial = mmse_initial(measurements, phi_tilde);
  BlockImage x = to_blocks(result.initial, b);
  result.initial_residual = residual_norm(x, measurements, p);
  const double tau0 = config.tau0_fraction * max_abs_coefficient(x, dct);

  double tau = tau0;
  for (std::size_t iter = 1; iter <= config.max_iters; ++iter, tau *= config.tau_decay) {
    const Tensor<double> previous = x.rows;
    if (config.wiener_window != 0) {
      x = to_blocks(wiener_smooth(combine_blocks(x.rows, b), config.wiener_window), b);
    }
    landweber(x, measurements, p, step);
    threshold_blocks(x, dct, tau);
    landweber(x, measurements, p, step);

    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < previous.size(); ++i) {
      const double d = x.rows[i] - previous[i];
      diff += d * d;
      norm += previous[i] * previous[i];
    }
    const double change = norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
    result.log.push_back({iter, tau, residual_norm(x, measurements, p), change});
    if (!std::isfinite(change)) throw NumericalError("SPL iteration diverged");
    if (change < config.rel_tol) break;
  }
  result.image = combine_blocks(x.rows, b);
  return result;
}

SplResult spl_reconstruct(const Tensor<double>& measurements, const MeasurementMatrix& phi, const Autocorrelation& r,
                          const SplConfig& config) {
  return spl_reconstruct(measurements, phi, mmse_matrix(phi, r), config);
}

}  // namespace csnet
