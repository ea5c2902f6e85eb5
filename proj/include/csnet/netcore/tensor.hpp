#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "csnet/errors.hpp"

namespace csnet {

using Shape = std::vector<std::size_t>;

inline std::size_t shape_volume(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

inline std::string shape_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) out << (i ? "," : "") << shape[i];
  out << ']';
  return out.str();
}

/// Dense row-major array with the last axis innermost.
///
/// Images and feature maps are rank 3 (height, width, channels); a batch adds
/// a leading axis. Filters are rank 4 (fh, fw, in, out).
template <typename T>
class Tensor {
public:
  using value_type = T;

  Tensor() = default;

  explicit Tensor(Shape shape, T fill = T{0}) : shape_(std::move(shape)) {
    validate_shape(shape_);
    data_.assign(shape_volume(shape_), fill);
  }

  Tensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
    validate_shape(shape_);
    if (data_.size() != shape_volume(shape_)) {
      throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                           " does not match shape " + shape_string(shape_));
    }
  }

  Tensor(std::initializer_list<std::size_t> shape, std::initializer_list<T> values)
      : Tensor(Shape(shape), std::vector<T>(values)) {}

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  // (i, j, c) on a rank-3 tensor: data[(i*W + j)*C + c].
  T& at(std::size_t i, std::size_t j, std::size_t c) {
    return data_[(i * shape_[1] + j) * shape_[2] + c];
  }
  const T& at(std::size_t i, std::size_t j, std::size_t c) const {
    return data_[(i * shape_[1] + j) * shape_[2] + c];
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  Tensor reshaped(Shape shape) const {
    if (shape_volume(shape) != data_.size()) {
      throw DimensionError("cannot reshape " + shape_string(shape_) + " to " + shape_string(shape));
    }
    return Tensor(std::move(shape), data_);
  }

  // Copy of item n along the leading axis.
  Tensor slice(std::size_t n) const {
    Shape inner(shape_.begin() + 1, shape_.end());
    const std::size_t stride = shape_volume(inner);
    if (n >= shape_.front()) throw DimensionError("slice index out of range");
    return Tensor(std::move(inner),
                  std::vector<T>(data_.begin() + n * stride, data_.begin() + (n + 1) * stride));
  }

  void set_slice(std::size_t n, const Tensor& item) {
    const std::size_t stride = data_.size() / shape_.front();
    if (n >= shape_.front() || item.size() != stride) throw DimensionError("set_slice shape mismatch");
    std::copy(item.data_.begin(), item.data_.end(), data_.begin() + n * stride);
  }

  template <typename U>
  Tensor<U> cast() const {
    std::vector<U> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(), [](T v) { return static_cast<U>(v); });
    return Tensor<U>(shape_, std::move(out));
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

private:
  static void validate_shape(const Shape& shape) {
    if (shape.empty()) throw DimensionError("tensor shape must have at least one axis");
    for (std::size_t extent : shape) {
      if (extent == 0) throw DimensionError("tensor extent must be positive in " + shape_string(shape));
    }
  }

  Shape shape_;
  std::vector<T> data_;
};

template <typename T>
void require_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(what) + ": shape " + shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
}

}  // namespace csnet
