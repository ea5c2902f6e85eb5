#include "csnet/data/pipeline.hpp"

#include <numeric>

#include "csnet/netcore/indexing.hpp"

namespace csnet {

namespace {

void require_image(const Tensor<double>& image, const char* what) {
  if (image.rank() != 3 || image.dim(2) != 1) throw DimensionError(std::string(what) + " expects [H,W,1]");
}

std::size_t round_up(std::size_t n, std::size_t b) { return (n + b - 1) / b * b; }

}  // namespace

PaddedImage pad_to_block_multiple(const Tensor<double>& image, std::size_t block_size) {
  require_image(image, "pad_to_block_multiple");
  if (block_size < 2) throw ConfigError("block size must be at least 2");
  const std::size_t h = image.dim(0), w = image.dim(1);
  const std::size_t ph = round_up(h, block_size), pw = round_up(w, block_size);
  if (ph == h && pw == w) return {image, h, w};
  Tensor<double> out({ph, pw, 1});
  for (std::size_t i = 0; i < ph; ++i) {
    const std::size_t si = symmetric_index(static_cast<std::ptrdiff_t>(i), h);
    for (std::size_t j = 0; j < pw; ++j) {
      out.at(i, j, 0) = image.at(si, symmetric_index(static_cast<std::ptrdiff_t>(j), w), 0);
    }
  }
  return {std::move(out), h, w};
}

Tensor<double> crop_to_original(const Tensor<double>& image, std::size_t original_height,
                                std::size_t original_width) {
  require_image(image, "crop_to_original");
  if (original_height > image.dim(0) || original_width > image.dim(1)) {
    throw GeometryError("crop size " + std::to_string(original_height) + "x" + std::to_string(original_width) +
                        " exceeds image " + shape_string(image.shape()));
  }
  Tensor<double> out({original_height, original_width, 1});
  for (std::size_t i = 0; i < original_height; ++i) {
    for (std::size_t j = 0; j < original_width; ++j) out.at(i, j, 0) = image.at(i, j, 0);
  }
  return out;
}

template <typename T>
Tensor<T> augment(const Tensor<T>& patch, Augmentation mode) {
  if (patch.rank() != 3) throw DimensionError("augment expects [H,W,C]");
  const std::size_t h = patch.dim(0), w = patch.dim(1), c = patch.dim(2);
  const int m = static_cast<int>(mode);
  if (m < 0 || m > 7) throw ConfigError("augmentation mode must be in 0..7");
  if (h != w && m != 0 && m != 4 && m != 5) {
    throw GeometryError("augmentation mode " + std::to_string(m) + " needs a square patch, got " +
                        shape_string(patch.shape()));
  }
  Tensor<T> out(patch.shape());
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      std::size_t si = i, sj = j;
      switch (mode) {
        case Augmentation::Identity: break;
        case Augmentation::Rotate90: si = j; sj = w - 1 - i; break;
        case Augmentation::Rotate180: si = h - 1 - i; sj = w - 1 - j; break;
        case Augmentation::Rotate270: si = h - 1 - j; sj = i; break;
        case Augmentation::FlipHorizontal: sj = w - 1 - j; break;
        case Augmentation::FlipVertical: si = h - 1 - i; break;
        case Augmentation::Transpose: si = j; sj = i; break;
        case Augmentation::AntiTranspose: si = h - 1 - j; sj = w - 1 - i; break;
      }
      for (std::size_t k = 0; k < c; ++k) out.at(i, j, k) = patch.at(si, sj, k);
    }
  }
  return out;
}

template Tensor<float> augment(const Tensor<float>&, Augmentation);
template Tensor<double> augment(const Tensor<double>&, Augmentation);

PatchSet extract_patches(const std::vector<ImageRecord>& images, const PatchOptions& options, Rng& rng) {
  const std::size_t p = options.patch_size;
  if (p == 0) throw ConfigError("patch size must be positive");
  PatchSet set;
  std::vector<const ImageRecord*> usable;
  for (const auto& image : images) {
    require_image(image.pixels, "extract_patches");
    if (image.pixels.dim(0) < p || image.pixels.dim(1) < p) {
      set.warnings.push_back("skipped " + image.name + ": " + std::to_string(image.pixels.dim(0)) + "x" +
                             std::to_string(image.pixels.dim(1)) + " is smaller than patch size " +
                             std::to_string(p));
    } else {
      usable.push_back(&image);
    }
  }
  if (usable.empty() && options.count > 0) throw ConfigError("no image is large enough for patch size " + std::to_string(p));
  set.patches.reserve(options.count);
  set.sources.reserve(options.count);
  for (std::size_t n = 0; n < options.count; ++n) {
    const ImageRecord& image = *usable[rng.below(usable.size())];
    const std::size_t top = rng.below(image.pixels.dim(0) - p + 1);
    const std::size_t left = rng.below(image.pixels.dim(1) - p + 1);
    Tensor<double> patch({p, p, 1});
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) patch.at(i, j, 0) = image.pixels.at(top + i, left + j, 0);
    }
    if (options.augment) patch = augment(patch, static_cast<Augmentation>(rng.below(8)));
    set.patches.push_back(std::move(patch));
    set.sources.push_back(image.name);
  }
  return set;
}

std::vector<std::vector<std::size_t>> shuffled_batches(std::size_t count, std::size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  if (batch_size > count) {
    throw ConfigError("batch size " + std::to_string(batch_size) + " exceeds patch count " + std::to_string(count));
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start + batch_size <= count; start += batch_size) {
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(start + batch_size));
  }
  return batches;
}

template <typename T>
Tensor<T> gather_batch(const std::vector<Tensor<double>>& patches, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw ConfigError("empty batch");
  const Shape& item = patches.at(indices.front()).shape();
  Shape shape{indices.size()};
  shape.insert(shape.end(), item.begin(), item.end());
  Tensor<T> batch(shape);
  const std::size_t stride = shape_volume(item);
  for (std::size_t n = 0; n < indices.size(); ++n) {
    const auto& patch = patches.at(indices[n]);
    if (patch.shape() != item) throw DimensionError("patches in a batch must share one shape");
    for (std::size_t k = 0; k < stride; ++k) batch[n * stride + k] = static_cast<T>(patch[k]);
  }
  return batch;
}

template Tensor<float> gather_batch(const std::vector<Tensor<double>>&, const std::vector<std::size_t>&);
template Tensor<double> gather_batch(const std::vector<Tensor<double>>&, const std::vector<std::size_t>&);

std::vector<Tensor<double>> batch_iter(const PatchSet& patches, std::size_t batch_size, Rng& rng) {
  std::vector<Tensor<double>> out;
  for (const auto& indices : shuffled_batches(patches.patches.size(), batch_size, rng)) {
    out.push_back(gather_batch<double>(patches.patches, indices));
  }
  return out;
}

}  // namespace csnet
