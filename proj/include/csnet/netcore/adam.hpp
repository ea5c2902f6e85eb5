#pragma once

#include <cstdint>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

struct AdamHyper {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Optimizer state for one parameter tensor. Moments start at zero.
template <typename T>
struct AdamState {
  Tensor<T> first_moment;
  Tensor<T> second_moment;
  std::uint64_t step_count = 0;
  AdamHyper hyper;

  AdamState() = default;
  AdamState(const Shape& shape, AdamHyper h) : first_moment(shape), second_moment(shape), hyper(h) {}
};

template <typename T>
struct AdamResult {
  Tensor<T> param;
  AdamState<T> state;
};

// Bias-corrected Adam. Returns the updated parameter and state; the inputs are
// left untouched.
template <typename T>
AdamResult<T> adam_step(const Tensor<T>& param, const Tensor<T>& grad, const AdamState<T>& state);

// Same update applied in place, used by the training loop.
template <typename T>
void adam_update(Tensor<T>& param, const Tensor<T>& grad, AdamState<T>& state);

}  // namespace csnet
