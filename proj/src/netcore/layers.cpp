#include "csnet/netcore/layers.hpp"

namespace csnet {

template <typename T>
Tensor<T> relu_forward(const Tensor<T>& input) {
  Tensor<T> out = input;
  for (T& v : out.values()) v = v > T{0} ? v : T{0};
  return out;
}

template <typename T>
Tensor<T> relu_backward(const Tensor<T>& grad_out, const Tensor<T>& input) {
  require_same_shape(grad_out, input, "relu_backward");
  Tensor<T> out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = input[i] > T{0} ? grad_out[i] : T{0};
  return out;
}

template <typename T>
MseResult<T> mse_loss(const Tensor<T>& prediction, const Tensor<T>& target, std::size_t batch_count) {
  require_same_shape(prediction, target, "mse_loss");
  if (batch_count == 0) throw ConfigError("mse_loss: batch_count must be at least 1");
  MseResult<T> result{0.0, Tensor<T>(prediction.shape())};
  const double scale = 1.0 / static_cast<double>(batch_count);
  double sum = 0.0;
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    const double diff = static_cast<double>(prediction[i]) - static_cast<double>(target[i]);
    sum += diff * diff;
    result.grad[i] = static_cast<T>(diff * scale);
  }
  result.loss = 0.5 * scale * sum;
  return result;
}

template Tensor<float> relu_forward(const Tensor<float>&);
template Tensor<double> relu_forward(const Tensor<double>&);
template Tensor<float> relu_backward(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> relu_backward(const Tensor<double>&, const Tensor<double>&);
template MseResult<float> mse_loss(const Tensor<float>&, const Tensor<float>&, std::size_t);
template MseResult<double> mse_loss(const Tensor<double>&, const Tensor<double>&, std::size_t);

}  // namespace csnet
