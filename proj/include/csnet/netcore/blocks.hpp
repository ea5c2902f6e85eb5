#pragma once

#include <cstddef>

#include "csnet/netcore/tensor.hpp"

namespace csnet {

// Reshape + concatenation: cell (i, j) of an [h, w, B*B] tensor becomes the
// B x B block at grid position (i, j), channel k landing at (k / B, k % B).
template <typename T>
Tensor<T> combine_blocks(const Tensor<T>& vectors, std::size_t block_size);

// Inverse permutation of combine_blocks; also its backward pass.
template <typename T>
Tensor<T> split_blocks(const Tensor<T>& image, std::size_t block_size);

}  // namespace csnet
