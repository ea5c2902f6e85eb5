#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

using ScalarFunction = std::function<double(const Tensor<double>&)>;

// Central differences (f(x + eps e_i) - f(x - eps e_i)) / (2 eps) for every
// coordinate i. Test oracle; 64-bit only.
inline Tensor<double> finite_diff_grad(const ScalarFunction& loss_fn, const Tensor<double>& point,
                                       double eps) {
  if (!(eps > 0.0)) throw ConfigError("finite_diff_grad: eps must be positive");
  Tensor<double> probe = point;
  Tensor<double> grad(point.shape());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double original = probe[i];
    probe[i] = original + eps;
    const double plus = loss_fn(probe);
    probe[i] = original - eps;
    const double minus = loss_fn(probe);
    probe[i] = original;
    grad[i] = (plus - minus) / (2.0 * eps);
  }
  return grad;
}

// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor). The floor keeps entries that
// are zero up to rounding from dominating the ratio.
inline double max_relative_error(const Tensor<double>& a, const Tensor<double>& b, double floor = 1e-6) {
  require_same_shape(a, b, "max_relative_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace csnet
