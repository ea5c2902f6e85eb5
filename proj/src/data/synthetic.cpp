#include "csnet/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "csnet/data/image_io.hpp"

namespace csnet {

namespace {

struct Plane {
  double base, gx, gy;
  double at(double x, double y) const { return base + gx * x + gy * y; }
};

Plane random_plane(Rng& rng) { return {rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}; }

}  // namespace

Tensor<double> synthetic_image(std::size_t height, std::size_t width, Rng& rng) {
  if (height == 0 || width == 0) throw GeometryError("synthetic image needs a positive size");
  struct Edge {
    double nx, ny, offset;
    Plane plane;
  };
  struct Disc {
    double cx, cy, radius;
    Plane plane;
  };
  const Plane background = random_plane(rng);
  const std::size_t edge_count = 2 + rng.below(3);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < edge_count; ++k) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double px = rng.uniform(), py = rng.uniform();
    const double nx = std::cos(angle), ny = std::sin(angle);
    edges.push_back({nx, ny, nx * px + ny * py, random_plane(rng)});
  }
  const std::size_t disc_count = 1 + rng.below(3);
  std::vector<Disc> discs;
  for (std::size_t k = 0; k < disc_count; ++k) {
    discs.push_back({rng.uniform(), rng.uniform(), rng.uniform(0.05, 0.2), random_plane(rng)});
  }
  const double fx = rng.uniform(1.0, 4.0), fy = rng.uniform(1.0, 4.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double amplitude = rng.uniform(0.0, 0.05);

  Tensor<double> image({height, width, 1});
  const double scale = 1.0 / static_cast<double>(std::max(height, width));
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const double x = (static_cast<double>(j) + 0.5) * scale;
      const double y = (static_cast<double>(i) + 0.5) * scale;
      double v = background.at(x, y);
      for (const auto& e : edges) {
        if (e.nx * x + e.ny * y > e.offset) v = 0.5 * (v + e.plane.at(x, y));
      }
      for (const auto& d : discs) {
        if ((x - d.cx) * (x - d.cx) + (y - d.cy) * (y - d.cy) < d.radius * d.radius) v = d.plane.at(x, y);
      }
      v += amplitude * std::sin(2.0 * std::numbers::pi * (fx * x + fy * y) + phase);
      image.at(i, j, 0) = std::clamp(v, 0.0, 1.0);
    }
  }
  return image;
}

std::vector<ImageRecord> synthetic_corpus(std::size_t count, std::size_t height, std::size_t width,
                                          std::uint64_t seed, const std::string& prefix) {
  Rng rng(seed);
  std::vector<ImageRecord> images;
  images.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "%03zu", n);
    images.push_back({prefix + name, synthetic_image(height, width, rng), height, width});
  }
  return images;
}

void write_corpus(const std::vector<ImageRecord>& images, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create directory " + directory + ": " + ec.message());
  for (const auto& image : images) save_image((std::filesystem::path(directory) / (image.name + ".pgm")).string(), image.pixels);
}

}  // namespace csnet
