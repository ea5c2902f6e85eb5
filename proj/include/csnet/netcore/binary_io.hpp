#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "csnet/errors.hpp"

namespace csnet {

// Little-endian encoder into an in-memory buffer.
class LeWriter {
public:
  void bytes(std::string_view raw) { buffer_.append(raw); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }

  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  const std::string& buffer() const { return buffer_; }

private:
  std::string buffer_;
};

// Little-endian decoder; every read names the field it is reading so a short
// buffer produces a FormatError that says where it ran out.
class LeReader {
public:
  LeReader(std::string_view data, std::string source) : data_(data), source_(std::move(source)) {}

  std::string_view bytes(std::size_t n, const char* field) {
    need(n, field);
    std::string_view out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32(const char* field) {
    need(4, field);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64(const char* field) {
    need(8, field);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }

  float f32(const char* field) { return std::bit_cast<float>(u32(field)); }
  double f64(const char* field) { return std::bit_cast<double>(u64(field)); }

  std::size_t remaining() const { return data_.size() - pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw FormatError(source_ + ": " + message);
  }

private:
  void need(std::size_t n, const char* field) const {
    if (data_.size() - pos_ < n) fail(std::string("truncated while reading ") + field);
  }

  std::string_view data_;
  std::string source_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace csnet
