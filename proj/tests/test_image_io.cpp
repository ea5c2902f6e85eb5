#include <filesystem>
#include <fstream>

#include "csnet/data/image_io.hpp"
#include "csnet/errors.hpp"
#include "support.hpp"

using namespace csnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("csnet_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

}  // namespace

TEST(ImageIo, TinyPgm) {
  std::string bytes = "P5\n# comment\n2 2\n255\n";
  bytes += std::string{'\x00', '\xff', '\x80', '\x40'};
  auto rec = decode_image(bytes, "tiny");
  ASSERT_EQ(rec.pixels.shape(), (Shape{2, 2, 1}));
  EXPECT_EQ(rec.pixels[0], 0.0);
  EXPECT_EQ(rec.pixels[1], 1.0);
  EXPECT_DOUBLE_EQ(rec.pixels[2], 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(rec.pixels[3], 64.0 / 255.0);
  EXPECT_EQ(rec.original_height, 2u);
  EXPECT_EQ(rec.original_width, 2u);
}

TEST(ImageIo, RedPngIsLuminance) {
  auto png = encode_png(1, 1, 3, {255, 0, 0});
  auto rec = decode_image(png, "red");
  EXPECT_NEAR(rec.pixels[0], 0.299, 1e-12);
  auto rgb = decode_image(encode_png(2, 1, 3, {0, 255, 0, 0, 0, 255}), "gb");
  EXPECT_NEAR(rgb.pixels[0], 0.587, 1e-12);
  EXPECT_NEAR(rgb.pixels[1], 0.114, 1e-12);
}

TEST(ImageIo, GrayPng) {
  auto rec = decode_image(encode_png(3, 1, 1, {0, 51, 255}), "g");
  ASSERT_EQ(rec.pixels.shape(), (Shape{1, 3, 1}));
  EXPECT_DOUBLE_EQ(rec.pixels[1], 0.2);
}

TEST(ImageIo, PgmRoundTripThroughDisk) {
  auto dir = scratch_dir("roundtrip");
  Tensor<double> img({5, 7, 1});
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<double>((i * 37) % 256) / 255.0;
  save_image((dir / "pic.pgm").string(), img);
  auto rec = load_image((dir / "pic.pgm").string());
  EXPECT_EQ(rec.name, "pic");
  EXPECT_LT(test::max_abs_diff(rec.pixels, img), 1e-15);
}

TEST(ImageIo, SaveClampsAndRounds) {
  Tensor<double> img({1, 3, 1});
  img[0] = -0.5;
  img[1] = 1.7;
  img[2] = 0.5;
  auto bytes = encode_pgm(img);
  auto rec = decode_image(bytes, "c");
  EXPECT_EQ(rec.pixels[0], 0.0);
  EXPECT_EQ(rec.pixels[1], 1.0);
  EXPECT_DOUBLE_EQ(rec.pixels[2], 128.0 / 255.0);
}

TEST(ImageIo, SmallMaxvalScales) {
  std::string bytes = "P5 1 1 15\n";
  bytes += '\x05';
  EXPECT_DOUBLE_EQ(decode_image(bytes, "m").pixels[0], 5.0 / 15.0);
}

TEST(ImageIo, CorruptFilesNameThePath) {
  auto dir = scratch_dir("corrupt");
  const auto bad = (dir / "broken.pgm").string();
  write_bytes(bad, "P5\n4 4\n255\nabc");
  try {
    load_image(bad);
    FAIL() << "expected a format error";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("broken.pgm"), std::string::npos);
  }
  const auto junk = (dir / "junk.png").string();
  write_bytes(junk, "not an image at all");
  EXPECT_THROW(load_image(junk), FormatError);
  auto png = encode_png(4, 4, 1, std::vector<std::uint8_t>(16, 7));
  write_bytes(dir / "cut.png", png.substr(0, png.size() / 2));
  EXPECT_THROW(load_image((dir / "cut.png").string()), FormatError);
}

TEST(ImageIo, ListsSortedImages) {
  auto dir = scratch_dir("list");
  Tensor<double> img({2, 2, 1}, 0.5);
  save_image((dir / "b.pgm").string(), img);
  save_image((dir / "a.pgm").string(), img);
  write_bytes(dir / "c.png", encode_png(2, 2, 1, {1, 2, 3, 4}));
  write_bytes(dir / "notes.txt", "x");
  auto files = list_images(dir.string());
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(fs::path(files[0]).filename(), "a.pgm");
  EXPECT_EQ(fs::path(files[2]).filename(), "c.png");
  EXPECT_EQ(load_images(dir.string()).size(), 3u);
  EXPECT_THROW(list_images((dir / "missing").string()), IoError);
}
