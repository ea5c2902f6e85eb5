#include "csnet/model/padding.hpp"

#include <algorithm>

#include "csnet/netcore/indexing.hpp"

namespace csnet {

template <typename T>
Tensor<T> pad_symmetric(const Tensor<T>& input, std::size_t pad) {
  if (input.rank() != 3) throw DimensionError("pad_symmetric expects [H,W,C]");
  if (pad == 0) return input;
  const std::size_t h = input.dim(0);
  const std::size_t w = input.dim(1);
  const std::size_t c = input.dim(2);
  const auto offset = static_cast<std::ptrdiff_t>(pad);
  Tensor<T> out({h + 2 * pad, w + 2 * pad, c});
  for (std::size_t i = 0; i < h + 2 * pad; ++i) {
    const std::size_t si = symmetric_index(static_cast<std::ptrdiff_t>(i) - offset, h);
    for (std::size_t j = 0; j < w + 2 * pad; ++j) {
      const std::size_t sj = symmetric_index(static_cast<std::ptrdiff_t>(j) - offset, w);
      const T* src = &input.at(si, sj, 0);
      std::copy(src, src + c, &out.at(i, j, 0));
    }
  }
  return out;
}

template <typename T>
Tensor<T> pad_symmetric_backward(const Tensor<T>& grad_padded, std::size_t pad) {
  if (grad_padded.rank() != 3 || grad_padded.dim(0) <= 2 * pad || grad_padded.dim(1) <= 2 * pad) {
    throw DimensionError("pad_symmetric_backward: gradient " + shape_string(grad_padded.shape()) +
                         " too small for padding " + std::to_string(pad));
  }
  if (pad == 0) return grad_padded;
  const std::size_t h = grad_padded.dim(0) - 2 * pad;
  const std::size_t w = grad_padded.dim(1) - 2 * pad;
  const std::size_t c = grad_padded.dim(2);
  const auto offset = static_cast<std::ptrdiff_t>(pad);
  Tensor<T> out({h, w, c});
  for (std::size_t i = 0; i < h + 2 * pad; ++i) {
    const std::size_t si = symmetric_index(static_cast<std::ptrdiff_t>(i) - offset, h);
    for (std::size_t j = 0; j < w + 2 * pad; ++j) {
      const std::size_t sj = symmetric_index(static_cast<std::ptrdiff_t>(j) - offset, w);
      for (std::size_t k = 0; k < c; ++k) out.at(si, sj, k) += grad_padded.at(i, j, k);
    }
  }
  return out;
}

template Tensor<float> pad_symmetric(const Tensor<float>&, std::size_t);
template Tensor<double> pad_symmetric(const Tensor<double>&, std::size_t);
template Tensor<float> pad_symmetric_backward(const Tensor<float>&, std::size_t);
template Tensor<double> pad_symmetric_backward(const Tensor<double>&, std::size_t);

}  // namespace csnet
