#pragma once

#include <cstddef>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

template <typename T>
Tensor<T> relu_forward(const Tensor<T>& input);

// Passes grad_out where input > 0. The subgradient at exactly 0 is 0.
template <typename T>
Tensor<T> relu_backward(const Tensor<T>& grad_out, const Tensor<T>& input);

template <typename T>
struct MseResult {
  double loss = 0.0;
  Tensor<T> grad;
};

/// loss = 1/(2N) * sum ||prediction - target||^2, grad = (prediction - target) / N.
///
/// The sum runs over every element of the (possibly batched) tensors, in
/// storage order, accumulated in double.
template <typename T>
MseResult<T> mse_loss(const Tensor<T>& prediction, const Tensor<T>& target, std::size_t batch_count);

}  // namespace csnet
