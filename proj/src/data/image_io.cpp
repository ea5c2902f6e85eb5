#include "csnet/data/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>

#include <png.h>

#include "csnet/netcore/binary_io.hpp"

namespace csnet {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

// Next whitespace-delimited header token, skipping '#' comments.
std::size_t pgm_token(const std::string& bytes, std::size_t& pos, const std::string& name, const char* field) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  std::size_t value = 0;
  std::size_t digits = 0;
  while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
    ++pos;
    if (++digits > 9) throw FormatError(name + ": PGM " + field + " too large");
  }
  if (digits == 0) throw FormatError(name + ": corrupt PGM header at " + field);
  return value;
}

ImageRecord decode_pgm(const std::string& bytes, const std::string& name) {
  std::size_t pos = 2;
  const std::size_t width = pgm_token(bytes, pos, name, "width");
  const std::size_t height = pgm_token(bytes, pos, name, "height");
  const std::size_t maxval = pgm_token(bytes, pos, name, "maxval");
  if (width == 0 || height == 0) throw FormatError(name + ": PGM has zero size");
  if (maxval == 0 || maxval > 255) throw FormatError(name + ": only 8-bit PGM is supported (maxval " +
                                                     std::to_string(maxval) + ")");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError(name + ": corrupt PGM header");
  }
  ++pos;
  if (bytes.size() - pos < width * height) throw FormatError(name + ": truncated PGM pixel data");
  Tensor<double> pixels({height, width, 1});
  const auto top = static_cast<double>(maxval);
  for (std::size_t i = 0; i < width * height; ++i) {
    pixels[i] = std::min(1.0, static_cast<double>(static_cast<unsigned char>(bytes[pos + i])) / top);
  }
  return {name, std::move(pixels), height, width};
}

ImageRecord decode_png(const std::string& bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw FormatError(name + ": corrupt PNG (" + image.message + ")");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw FormatError(name + ": corrupt PNG (" + message + ")");
  }
  const std::size_t width = image.width;
  const std::size_t height = image.height;
  Tensor<double> pixels({height, width, 1});
  for (std::size_t i = 0; i < width * height; ++i) {
    if (color) {
      const double r = buffer[3 * i], g = buffer[3 * i + 1], b = buffer[3 * i + 2];
      pixels[i] = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
    } else {
      pixels[i] = buffer[i] / 255.0;
    }
  }
  return {name, std::move(pixels), height, width};
}

}  // namespace

ImageRecord decode_image(const std::string& bytes, const std::string& name) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes, name);
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) return decode_png(bytes, name);
  throw FormatError(name + ": unsupported image format (expected P5 PGM or PNG)");
}

ImageRecord load_image(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    ImageRecord record = decode_image(bytes, path);
    record.name = std::filesystem::path(path).stem().string();
    return record;
  } catch (const FormatError&) {
    throw;
  }
}

std::string encode_pgm(const Tensor<double>& image) {
  if (image.rank() != 3 || image.dim(2) != 1) throw DimensionError("save_image expects [H,W,1]");
  std::string out = "P5\n" + std::to_string(image.dim(1)) + " " + std::to_string(image.dim(0)) + "\n255\n";
  out.reserve(out.size() + image.size());
  for (double v : image.values()) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(clamped * 255.0))));
  }
  return out;
}

void save_image(const std::string& path, const Tensor<double>& image) { write_file(path, encode_pgm(image)); }

std::string encode_png(std::size_t width, std::size_t height, std::size_t channels,
                       const std::vector<std::uint8_t>& samples) {
  if (channels != 1 && channels != 3) throw ConfigError("encode_png supports 1 or 3 channels");
  if (samples.size() != width * height * channels) throw DimensionError("encode_png sample count mismatch");
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, samples.data(), 0, nullptr)) {
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, samples.data(), 0, nullptr)) {
    throw FormatError(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::string> list_images(const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) throw IoError("not a directory: " + directory);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<ImageRecord> load_images(const std::string& directory) {
  std::vector<ImageRecord> images;
  for (const auto& path : list_images(directory)) images.push_back(load_image(path));
  return images;
}

}  // namespace csnet
