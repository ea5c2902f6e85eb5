#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "csnet/netcore/rng.hpp"
#include "csnet/netcore/tensor.hpp"

namespace csnet {

/// A grayscale image in [0,1], [H, W, 1], with its size before any padding.
struct ImageRecord {
  std::string name;
  Tensor<double> pixels;
  std::size_t original_height = 0;
  std::size_t original_width = 0;
};

struct PaddedImage {
  Tensor<double> pixels;
  std::size_t original_height = 0;
  std::size_t original_width = 0;
};

// Extends the bottom and right edges by half-sample symmetric reflection up to
// the next multiple of `block_size`.
PaddedImage pad_to_block_multiple(const Tensor<double>& image, std::size_t block_size);

// Top-left original_height x original_width corner.
Tensor<double> crop_to_original(const Tensor<double>& image, std::size_t original_height,
                                std::size_t original_width);

/// The eight symmetries of the square:
///   0 identity, 1/2/3 rotation by 90/180/270 degrees counter-clockwise,
///   4 horizontal flip (mirror columns), 5 vertical flip (mirror rows),
///   6 transpose, 7 anti-transpose.
enum class Augmentation : int {
  Identity = 0,
  Rotate90 = 1,
  Rotate180 = 2,
  Rotate270 = 3,
  FlipHorizontal = 4,
  FlipVertical = 5,
  Transpose = 6,
  AntiTranspose = 7,
};

template <typename T>
Tensor<T> augment(const Tensor<T>& patch, Augmentation mode);

inline Tensor<double> augment(const Tensor<double>& patch, int mode) {
  if (mode < 0 || mode > 7) throw ConfigError("augmentation mode must be in 0..7");
  return augment(patch, static_cast<Augmentation>(mode));
}

struct PatchSet {
  std::vector<Tensor<double>> patches;
  std::vector<std::string> sources;
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;
};

struct PatchOptions {
  std::size_t patch_size = 32;
  std::size_t count = 1600;
  bool augment = true;
};

/// Draws `count` patches with replacement. Per patch: a source image chosen
/// uniformly, a uniform top-left corner, then (when enabled) a uniform
/// augmentation mode. Images smaller than the patch are skipped with a warning.
PatchSet extract_patches(const std::vector<ImageRecord>& images, const PatchOptions& options, Rng& rng);

// Shuffles [0, count) with `rng` and cuts it into full batches; a trailing
// partial batch is dropped. Successive calls on the same generator give the
// successive epochs.
std::vector<std::vector<std::size_t>> shuffled_batches(std::size_t count, std::size_t batch_size, Rng& rng);

// Stacks the indexed patches into [N, P, P, 1].
template <typename T>
Tensor<T> gather_batch(const std::vector<Tensor<double>>& patches, const std::vector<std::size_t>& indices);

// One epoch of batch tensors from the patch set.
std::vector<Tensor<double>> batch_iter(const PatchSet& patches, std::size_t batch_size, Rng& rng);

}  // namespace csnet
