#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csnet/data/pipeline.hpp"

namespace csnet {

// Binary PGM (P5, maxval <= 255) or 8-bit gray / RGB PNG. RGB is reduced to
// Y = 0.299 R + 0.587 G + 0.114 B; values are divided by 255 (by maxval for
// PGM files with a smaller maxval). The record name is the file stem.
ImageRecord load_image(const std::string& path);

ImageRecord decode_image(const std::string& bytes, const std::string& name);

// P5 PGM with bytes round(clamp(x, 0, 1) * 255).
void save_image(const std::string& path, const Tensor<double>& image);
std::string encode_pgm(const Tensor<double>& image);

// 8-bit PNG from interleaved samples (1 channel gray or 3 channels RGB).
std::string encode_png(std::size_t width, std::size_t height, std::size_t channels,
                       const std::vector<std::uint8_t>& samples);

// .pgm and .png files of a directory, sorted by name.
std::vector<std::string> list_images(const std::string& directory);

std::vector<ImageRecord> load_images(const std::string& directory);

}  // namespace csnet
