#include "csnet/netcore/adam.hpp"

#include <cmath>

namespace csnet {

template <typename T>
void adam_update(Tensor<T>& param, const Tensor<T>& grad, AdamState<T>& state) {
  require_same_shape(param, grad, "adam_step gradient");
  require_same_shape(param, state.first_moment, "adam_step first moment");
  require_same_shape(param, state.second_moment, "adam_step second moment");
  const AdamHyper& h = state.hyper;
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double correction1 = 1.0 - std::pow(h.beta1, t);
  const double correction2 = 1.0 - std::pow(h.beta2, t);
  const T beta1 = static_cast<T>(h.beta1);
  const T beta2 = static_cast<T>(h.beta2);
  const T one = T{1};
  for (std::size_t i = 0; i < param.size(); ++i) {
    const T g = grad[i];
    T& m = state.first_moment[i];
    T& v = state.second_moment[i];
    m = beta1 * m + (one - beta1) * g;
    v = beta2 * v + (one - beta2) * g * g;
    const double m_hat = static_cast<double>(m) / correction1;
    const double v_hat = static_cast<double>(v) / correction2;
    param[i] = static_cast<T>(static_cast<double>(param[i]) -
                              h.learning_rate * m_hat / (std::sqrt(v_hat) + h.epsilon));
  }
}

template <typename T>
AdamResult<T> adam_step(const Tensor<T>& param, const Tensor<T>& grad, const AdamState<T>& state) {
  AdamResult<T> result{param, state};
  adam_update(result.param, grad, result.state);
  return result;
}

template void adam_update(Tensor<float>&, const Tensor<float>&, AdamState<float>&);
template void adam_update(Tensor<double>&, const Tensor<double>&, AdamState<double>&);
template AdamResult<float> adam_step(const Tensor<float>&, const Tensor<float>&, const AdamState<float>&);
template AdamResult<double> adam_step(const Tensor<double>&, const Tensor<double>&, const AdamState<double>&);

}  // namespace csnet
