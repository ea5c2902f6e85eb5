#pragma once

#include <chrono>
#include <functional>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

// 10 log10(peak^2 / MSE). Identical images give +infinity.
double psnr(const Tensor<double>& reference, const Tensor<double>& test, double peak = 1.0);

struct SsimOptions {
  std::size_t window = 11;
  double sigma = 1.5;
  double peak = 1.0;
  double k1 = 0.01;
  double k2 = 0.03;
};

// Mean SSIM over every valid (fully inside) Gaussian window position.
double ssim(const Tensor<double>& reference, const Tensor<double>& test, const SsimOptions& options = {});

// Wall time of `action` on the steady clock, in seconds.
inline double time_op(const std::function<void()>& action) {
  const auto start = std::chrono::steady_clock::now();
  action();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace csnet
