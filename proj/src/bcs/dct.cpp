#include <cmath>
#include <numbers>

#include "csnet/bcs/bcs.hpp"

namespace csnet {

Dct2::Dct2(std::size_t block_size) : n_(block_size), basis_(block_size * block_size) {
  if (block_size < 1) throw ConfigError("DCT block size must be positive");
  const double n = static_cast<double>(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < n_; ++i) {
      basis_[k * n_ + i] =
          alpha * std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) * static_cast<double>(k) / (2.0 * n));
    }
  }
}

// coeffs = C X C^T
void Dct2::forward(std::span<const double> block, std::span<double> coeffs) const {
  if (block.size() != n_ * n_ || coeffs.size() != n_ * n_) throw DimensionError("DCT block size mismatch");
  std::vector<double> tmp(n_ * n_, 0.0);  // C X
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double c = basis_[k * n_ + i];
      for (std::size_t j = 0; j < n_; ++j) tmp[k * n_ + j] += c * block[i * n_ + j];
    }
  }
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t l = 0; l < n_; ++l) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n_; ++j) sum += tmp[k * n_ + j] * basis_[l * n_ + j];
      coeffs[k * n_ + l] = sum;
    }
  }
}

// block = C^T Y C
void Dct2::inverse(std::span<const double> coeffs, std::span<double> block) const {
  if (block.size() != n_ * n_ || coeffs.size() != n_ * n_) throw DimensionError("DCT block size mismatch");
  std::vector<double> tmp(n_ * n_, 0.0);  // C^T Y
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double c = basis_[k * n_ + i];
      for (std::size_t l = 0; l < n_; ++l) tmp[i * n_ + l] += c * coeffs[k * n_ + l];
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      double sum = 0.0;
      for (std::size_t l = 0; l < n_; ++l) sum += tmp[i * n_ + l] * basis_[l * n_ + j];
      block[i * n_ + j] = sum;
    }
  }
}

std::vector<double> dct2_forward(std::span<const double> block, std::size_t block_size) {
  std::vector<double> out(block.size());
  Dct2(block_size).forward(block, out);
  return out;
}

std::vector<double> dct2_inverse(std::span<const double> coeffs, std::size_t block_size) {
  std::vector<double> out(coeffs.size());
  Dct2(block_size).inverse(coeffs, out);
  return out;
}

void hard_threshold(std::span<double> coeffs, double tau) {
  if (tau < 0.0) throw ConfigError("threshold must be nonnegative");
  for (double& c : coeffs) {
    if (!(std::abs(c) >= tau)) c = 0.0;
  }
}

std::vector<double> hard_thresholded(std::span<const double> coeffs, double tau) {
  std::vector<double> out(coeffs.begin(), coeffs.end());
  hard_threshold(out, tau);
  return out;
}

}  // namespace csnet
