#include "csnet/netcore/conv.hpp"

namespace csnet::reference {

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                         std::span<const T> bias) {
  detail::check_conv_args(input, spec, filters, bias);
  Tensor<T> output(spec.output_shape(input.shape()));
  for (std::size_t oy = 0; oy < output.dim(0); ++oy) {
    for (std::size_t ox = 0; ox < output.dim(1); ++ox) {
      for (std::size_t co = 0; co < spec.out_channels; ++co) {
        T sum = 0;
        for (std::size_t ky = 0; ky < spec.filter_height; ++ky) {
          for (std::size_t kx = 0; kx < spec.filter_width; ++kx) {
            for (std::size_t ci = 0; ci < spec.in_channels; ++ci) {
              const T v = input.at(oy * spec.stride_h + ky, ox * spec.stride_w + kx, ci);
              const T wv =
                  filters[((ky * spec.filter_width + kx) * spec.in_channels + ci) * spec.out_channels + co];
              sum += v * wv;
            }
          }
        }
        if (spec.has_bias) sum += bias[co];
        output.at(oy, ox, co) = sum;
      }
    }
  }
  return output;
}

template <typename T>
ConvGradients<T> conv2d_backward(const Tensor<T>& grad_out, const Tensor<T>& input, const ConvSpec& spec,
                                 const Tensor<T>& filters) {
  const Shape out_shape = spec.output_shape(input.shape());
  if (grad_out.shape() != out_shape || filters.shape() != spec.filter_shape()) {
    throw DimensionError("conv2d_backward shape mismatch");
  }
  ConvGradients<T> grads{Tensor<T>(input.shape()), Tensor<T>(spec.filter_shape()), std::nullopt};
  if (spec.has_bias) grads.bias = Tensor<T>(Shape{spec.out_channels});

  // Scatter form: every (output, tap) pair contributes once.
  for (std::size_t oy = 0; oy < out_shape[0]; ++oy) {
    for (std::size_t ox = 0; ox < out_shape[1]; ++ox) {
      for (std::size_t co = 0; co < spec.out_channels; ++co) {
        const T g = grad_out.at(oy, ox, co);
        if (spec.has_bias) (*grads.bias)[co] += g;
        for (std::size_t ky = 0; ky < spec.filter_height; ++ky) {
          for (std::size_t kx = 0; kx < spec.filter_width; ++kx) {
            for (std::size_t ci = 0; ci < spec.in_channels; ++ci) {
              const std::size_t y = oy * spec.stride_h + ky;
              const std::size_t x = ox * spec.stride_w + kx;
              const std::size_t widx =
                  ((ky * spec.filter_width + kx) * spec.in_channels + ci) * spec.out_channels + co;
              grads.input.at(y, x, ci) += g * filters[widx];
              grads.filters[widx] += g * input.at(y, x, ci);
            }
          }
        }
      }
    }
  }
  return grads;
}

template Tensor<float> conv2d_forward<float>(const Tensor<float>&, const ConvSpec&, const Tensor<float>&,
                                             std::span<const float>);
template Tensor<double> conv2d_forward<double>(const Tensor<double>&, const ConvSpec&, const Tensor<double>&,
                                               std::span<const double>);
template ConvGradients<float> conv2d_backward<float>(const Tensor<float>&, const Tensor<float>&,
                                                     const ConvSpec&, const Tensor<float>&);
template ConvGradients<double> conv2d_backward<double>(const Tensor<double>&, const Tensor<double>&,
                                                       const ConvSpec&, const Tensor<double>&);

}  // namespace csnet::reference
