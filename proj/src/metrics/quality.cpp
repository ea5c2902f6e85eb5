#include "csnet/metrics/quality.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace csnet {

namespace {

void require_gray_pair(const Tensor<double>& a, const Tensor<double>& b, const char* what) {
  require_same_shape(a, b, what);
  if (a.rank() != 3 || a.dim(2) != 1) throw DimensionError(std::string(what) + " expects [H,W,1] images");
}

}  // namespace

double psnr(const Tensor<double>& reference, const Tensor<double>& test, double peak) {
  require_same_shape(reference, test, "psnr");
  if (!(peak > 0.0)) throw ConfigError("psnr peak must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - test[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Tensor<double>& reference, const Tensor<double>& test, const SsimOptions& options) {
  require_gray_pair(reference, test, "ssim");
  const std::size_t win = options.window;
  const std::size_t h = reference.dim(0);
  const std::size_t w = reference.dim(1);
  if (h < win || w < win) {
    throw GeometryError("ssim: image " + shape_string(reference.shape()) + " smaller than the " +
                        std::to_string(win) + "x" + std::to_string(win) + " window");
  }

  // Separable Gaussian, normalized so the 2D weights sum to one.
  std::vector<double> g(win);
  double total = 0.0;
  const double center = static_cast<double>(win - 1) / 2.0;
  for (std::size_t i = 0; i < win; ++i) {
    const double d = static_cast<double>(i) - center;
    g[i] = std::exp(-d * d / (2.0 * options.sigma * options.sigma));
    total += g[i];
  }
  for (double& v : g) v /= total;

  const double c1 = (options.k1 * options.peak) * (options.k1 * options.peak);
  const double c2 = (options.k2 * options.peak) * (options.k2 * options.peak);
  const std::size_t out_h = h - win + 1;
  const std::size_t out_w = w - win + 1;
  std::vector<double> scores(out_h * out_w);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(out_h); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < out_w; ++j) {
      double mx = 0, my = 0, xx = 0, yy = 0, xy = 0;
      for (std::size_t u = 0; u < win; ++u) {
        for (std::size_t v = 0; v < win; ++v) {
          const double weight = g[u] * g[v];
          const double x = reference.at(i + u, j + v, 0);
          const double y = test.at(i + u, j + v, 0);
          mx += weight * x;
          my += weight * y;
          xx += weight * x * x;
          yy += weight * y * y;
          xy += weight * x * y;
        }
      }
      const double vx = xx - mx * mx;
      const double vy = yy - my * my;
      const double cov = xy - mx * my;
      scores[i * out_w + j] = ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
  }
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

}  // namespace csnet
