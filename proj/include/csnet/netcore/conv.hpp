#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

/// Geometry of a valid-padding 2D convolution.
///
/// Filters are stored [fh, fw, in_channels, out_channels]; the bias, when
/// present, is [out_channels]. A stride equal to the filter size applies the
/// filter to non-overlapping windows.
struct ConvSpec {
  std::size_t filter_height = 1;
  std::size_t filter_width = 1;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t stride_h = 1;
  std::size_t stride_w = 1;
  bool has_bias = false;

  Shape filter_shape() const { return {filter_height, filter_width, in_channels, out_channels}; }

  // Output [H', W', out_channels] for an [H, W, in_channels] input. Throws on
  // channel mismatch or on geometry that does not tile exactly.
  Shape output_shape(const Shape& input_shape) const;

  friend bool operator==(const ConvSpec&, const ConvSpec&) = default;
};

template <typename T>
struct ConvGradients {
  Tensor<T> input;
  Tensor<T> filters;
  std::optional<Tensor<T>> bias;
};

// Each output element is accumulated by exactly one thread, in the same
// (ky, kx, ci) order as the serial reference, so results do not depend on the
// OpenMP thread count.
template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                         std::span<const T> bias = {});

template <typename T>
ConvGradients<T> conv2d_backward(const Tensor<T>& grad_out, const Tensor<T>& input,
                                 const ConvSpec& spec, const Tensor<T>& filters);

namespace reference {

// Direct-summation kernels, serial, kept as the test and benchmark baseline.
template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                         std::span<const T> bias = {});

template <typename T>
ConvGradients<T> conv2d_backward(const Tensor<T>& grad_out, const Tensor<T>& input,
                                 const ConvSpec& spec, const Tensor<T>& filters);

}  // namespace reference

namespace detail {
template <typename T>
void check_conv_args(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                     std::span<const T> bias);
}  // namespace detail

}  // namespace csnet
