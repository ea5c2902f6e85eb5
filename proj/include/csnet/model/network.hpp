#pragma once

#include <cstddef>
#include <vector>

#include "csnet/model/model.hpp"
#include "csnet/netcore/adam.hpp"

namespace csnet {

// [H, W, 1] with H, W multiples of B  ->  [H/B, W/B, n_B].
template <typename T>
Tensor<T> sample(const CsNetModel<T>& model, const Tensor<T>& image);

// [h, w, n_B]  ->  [h*B, w*B, 1]: 1x1 bias-free convolution, then combine_blocks.
template <typename T>
Tensor<T> initial_reconstruct(const CsNetModel<T>& model, const Tensor<T>& measurements);

// m padded 3x3 (f x f) convolutions; ReLU after every layer except the last
// unless config.final_relu.
template <typename T>
Tensor<T> deep_reconstruct(const CsNetModel<T>& model, const Tensor<T>& initial);

template <typename T>
struct ForwardResult {
  Tensor<T> measurements;
  Tensor<T> initial;
  Tensor<T> final;
};

template <typename T>
ForwardResult<T> forward(const CsNetModel<T>& model, const Tensor<T>& image);

template <typename T>
struct LossAndGradients {
  double loss = 0.0;
  CsNetModel<T> gradients;
};

// Loss 1/(2N) sum_n ||f(x_n) - x_n||^2 over a [N, H, W, 1] batch and its
// gradient with respect to every parameter. Samples run in parallel; their
// gradients are summed in sample order.
template <typename T>
LossAndGradients<T> loss_and_gradients(const CsNetModel<T>& model, const Tensor<T>& batch);

/// One Adam state per parameter tensor, in CsNetModel::parameters() order.
template <typename T>
struct CsNetOptimizer {
  std::vector<AdamState<T>> states;

  CsNetOptimizer() = default;
  CsNetOptimizer(const CsNetModel<T>& model, AdamHyper hyper);

  void set_learning_rate(double rate);
};

// Forward, backward and one Adam step on every parameter. Returns the loss
// of the batch before the update.
template <typename T>
double train_step(CsNetModel<T>& model, const Tensor<T>& batch, CsNetOptimizer<T>& optimizer);

}  // namespace csnet
