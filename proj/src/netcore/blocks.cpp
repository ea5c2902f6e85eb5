#include "csnet/netcore/blocks.hpp"

#include <string>

namespace csnet {

template <typename T>
Tensor<T> combine_blocks(const Tensor<T>& vectors, std::size_t block_size) {
  if (vectors.rank() != 3 || vectors.dim(2) != block_size * block_size) {
    throw DimensionError("combine_blocks expects [h,w," + std::to_string(block_size * block_size) + "], got " +
                         shape_string(vectors.shape()));
  }
  const std::size_t grid_h = vectors.dim(0);
  const std::size_t grid_w = vectors.dim(1);
  Tensor<T> image({grid_h * block_size, grid_w * block_size, 1});
  for (std::size_t bi = 0; bi < grid_h; ++bi) {
    for (std::size_t bj = 0; bj < grid_w; ++bj) {
      for (std::size_t k = 0; k < block_size * block_size; ++k) {
        image.at(bi * block_size + k / block_size, bj * block_size + k % block_size, 0) = vectors.at(bi, bj, k);
      }
    }
  }
  return image;
}

template <typename T>
Tensor<T> split_blocks(const Tensor<T>& image, std::size_t block_size) {
  if (image.rank() != 3 || image.dim(2) != 1) {
    throw DimensionError("split_blocks expects [H,W,1], got " + shape_string(image.shape()));
  }
  if (image.dim(0) % block_size != 0 || image.dim(1) % block_size != 0) {
    throw GeometryError("image " + shape_string(image.shape()) + " is not a multiple of block " +
                        std::to_string(block_size));
  }
  const std::size_t grid_h = image.dim(0) / block_size;
  const std::size_t grid_w = image.dim(1) / block_size;
  Tensor<T> vectors({grid_h, grid_w, block_size * block_size});
  for (std::size_t bi = 0; bi < grid_h; ++bi) {
    for (std::size_t bj = 0; bj < grid_w; ++bj) {
      for (std::size_t k = 0; k < block_size * block_size; ++k) {
        vectors.at(bi, bj, k) = image.at(bi * block_size + k / block_size, bj * block_size + k % block_size, 0);
      }
    }
  }
  return vectors;
}

template Tensor<float> combine_blocks(const Tensor<float>&, std::size_t);
template Tensor<double> combine_blocks(const Tensor<double>&, std::size_t);
template Tensor<float> split_blocks(const Tensor<float>&, std::size_t);
template Tensor<double> split_blocks(const Tensor<double>&, std::size_t);

}  // namespace csnet
