#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>

#include <gtest/gtest.h>

#include "csnet/netcore/rng.hpp"
#include "csnet/netcore/tensor.hpp"

namespace csnet::test {

template <typename T = double>
Tensor<T> random_tensor(const Shape& shape, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Rng rng(seed);
  Tensor<T> t(shape);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<T>(rng.uniform(lo, hi));
  return t;
}

template <typename T>
double max_abs_diff(const Tensor<T>& a, const Tensor<T>& b) {
  EXPECT_EQ(a.shape(), b.shape());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
  }
  return worst;
}

inline bool bit_identical(const Tensor<double>& a, const Tensor<double>& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  }
  return true;
}

// Direct summation convolution over [H,W,Cin] with [fh,fw,Cin,Cout] filters.
inline Tensor<double> naive_conv(const Tensor<double>& x, const Tensor<double>& w, std::size_t sh, std::size_t sw,
                                 const std::vector<double>& bias = {}) {
  const std::size_t h = x.dim(0), wd = x.dim(1), cin = x.dim(2);
  const std::size_t fh = w.dim(0), fw = w.dim(1), cout = w.dim(3);
  const std::size_t oh = (h - fh) / sh + 1, ow = (wd - fw) / sw + 1;
  Tensor<double> y({oh, ow, cout});
  for (std::size_t i = 0; i < oh; ++i)
    for (std::size_t j = 0; j < ow; ++j)
      for (std::size_t o = 0; o < cout; ++o) {
        double s = bias.empty() ? 0.0 : bias[o];
        for (std::size_t a = 0; a < fh; ++a)
          for (std::size_t b = 0; b < fw; ++b)
            for (std::size_t c = 0; c < cin; ++c)
              s += x[((i * sh + a) * wd + (j * sw + b)) * cin + c] * w[((a * fw + b) * cin + c) * cout + o];
        y[(i * ow + j) * cout + o] = s;
      }
  return y;
}

// Gauss-Jordan inverse with partial pivoting, n x n row-major.
inline std::vector<double> gauss_jordan_inverse(std::vector<double> a, std::size_t n) {
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(inv[col * n + k], inv[pivot * n + k]);
    }
    const double d = a[col * n + col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] /= d;
      inv[col * n + k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return inv;
}

// Chi-square statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi = 0.0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

// Upper 1% critical value of chi-square with k degrees of freedom
// (Wilson-Hilferty approximation, adequate for k >= 10).
inline double chi_square_critical_99(double k) {
  const double z = 2.326347874;
  const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

}  // namespace csnet::test
