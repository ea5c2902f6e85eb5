#pragma once

#include <cstddef>

#include "csnet/netcore/rng.hpp"
#include "csnet/netcore/tensor.hpp"

namespace csnet {

// Zero-mean Gaussian entries with standard deviation sqrt(2 / fan_in), drawn
// in storage order from rng.gaussian().
template <typename T>
Tensor<T> he_init(const Shape& shape, std::size_t fan_in, Rng& rng);

}  // namespace csnet
