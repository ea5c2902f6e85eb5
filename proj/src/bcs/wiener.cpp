#include <algorithm>

#include "csnet/bcs/bcs.hpp"
#include "csnet/netcore/indexing.hpp"

namespace csnet {

Tensor<double> wiener_smooth(const Tensor<double>& image, std::size_t window) {
  if (window < 3 || window % 2 == 0) throw ConfigError("Wiener window must be odd and at least 3");
  if (image.rank() != 3 || image.dim(2) != 1) throw DimensionError("wiener_smooth expects [H,W,1]");
  const std::size_t h = image.dim(0);
  const std::size_t w = image.dim(1);
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  const double area = static_cast<double>(window * window);

  std::vector<double> mean(h * w), var(h * w);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(h); ++ii) {
    for (std::size_t j = 0; j < w; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      double sum = 0.0;
      for (std::ptrdiff_t di = -half; di <= half; ++di) {
        for (std::ptrdiff_t dj = -half; dj <= half; ++dj) {
          sum += image.at(symmetric_index(ii + di, h), symmetric_index(jj + dj, w), 0);
        }
      }
      const double mu = sum / area;
      double sq = 0.0;
      for (std::ptrdiff_t di = -half; di <= half; ++di) {
        for (std::ptrdiff_t dj = -half; dj <= half; ++dj) {
          const double d = image.at(symmetric_index(ii + di, h), symmetric_index(jj + dj, w), 0) - mu;
          sq += d * d;
        }
      }
      const std::size_t idx = static_cast<std::size_t>(ii) * w + j;
      mean[idx] = mu;
      var[idx] = sq / area;
    }
  }

  double noise = 0.0;
  for (double v : var) noise += v;
  noise /= static_cast<double>(var.size());

  Tensor<double> out(image.shape());
  for (std::size_t idx = 0; idx < h * w; ++idx) {
    const double denom = std::max(var[idx], noise);
    const double gain = denom > 0.0 ? std::max(var[idx] - noise, 0.0) / denom : 0.0;
    out[idx] = mean[idx] + gain * (image[idx] - mean[idx]);
  }
  return out;
}

}  // namespace csnet
