#pragma once

#include <cstddef>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

// Half-sample symmetric padding of `pad` pixels on every side of an [H, W, C]
// tensor.
template <typename T>
Tensor<T> pad_symmetric(const Tensor<T>& input, std::size_t pad);

// Adjoint of pad_symmetric: border gradients fold back onto the pixels they
// were copied from.
template <typename T>
Tensor<T> pad_symmetric_backward(const Tensor<T>& grad_padded, std::size_t pad);

}  // namespace csnet
