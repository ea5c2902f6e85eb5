#include "csnet/netcore/init.hpp"

#include <cmath>

namespace csnet {

template <typename T>
Tensor<T> he_init(const Shape& shape, std::size_t fan_in, Rng& rng) {
  if (fan_in == 0) throw ConfigError("he_init: fan_in must be at least 1");
  const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
  Tensor<T> out(shape);
  for (T& v : out.values()) v = static_cast<T>(stddev * rng.gaussian());
  return out;
}

template Tensor<float> he_init<float>(const Shape&, std::size_t, Rng&);
template Tensor<double> he_init<double>(const Shape&, std::size_t, Rng&);

}  // namespace csnet
