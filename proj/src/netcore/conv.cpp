#include "csnet/netcore/conv.hpp"

#include <string>
#include <vector>

#include <Eigen/Core>

namespace csnet {

Shape ConvSpec::output_shape(const Shape& input_shape) const {
  if (stride_h == 0 || stride_w == 0) throw GeometryError("convolution stride must be at least 1");
  if (input_shape.size() != 3) {
    throw DimensionError("convolution input must be [H,W,C], got " + shape_string(input_shape));
  }
  const std::size_t height = input_shape[0];
  const std::size_t width = input_shape[1];
  if (input_shape[2] != in_channels) {
    throw DimensionError("convolution input has " + std::to_string(input_shape[2]) +
                         " channels, filters expect " + std::to_string(in_channels));
  }
  if (height < filter_height || width < filter_width) {
    throw GeometryError("input " + shape_string(input_shape) + " smaller than filter " +
                        std::to_string(filter_height) + "x" + std::to_string(filter_width));
  }
  if ((height - filter_height) % stride_h != 0 || (width - filter_width) % stride_w != 0) {
    throw GeometryError("input " + shape_string(input_shape) + " does not tile with filter " +
                        std::to_string(filter_height) + "x" + std::to_string(filter_width) +
                        " at stride " + std::to_string(stride_h) + "x" + std::to_string(stride_w));
  }
  return {(height - filter_height) / stride_h + 1, (width - filter_width) / stride_w + 1, out_channels};
}

namespace detail {

template <typename T>
void check_conv_args(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                     std::span<const T> bias) {
  if (filters.shape() != spec.filter_shape()) {
    throw DimensionError("filter tensor " + shape_string(filters.shape()) + " does not match spec " +
                         shape_string(spec.filter_shape()));
  }
  if (spec.has_bias && bias.size() != spec.out_channels) {
    throw DimensionError("bias length " + std::to_string(bias.size()) + " does not match " +
                         std::to_string(spec.out_channels) + " output channels");
  }
  if (!spec.has_bias && !bias.empty()) throw DimensionError("bias given for a bias-free convolution");
  (void)spec.output_shape(input.shape());
}

template void check_conv_args<float>(const Tensor<float>&, const ConvSpec&, const Tensor<float>&,
                                     std::span<const float>);
template void check_conv_args<double>(const Tensor<double>&, const ConvSpec&, const Tensor<double>&,
                                      std::span<const double>);

}  // namespace detail

namespace {

// Output pixels per im2col tile. Tiles have a fixed size independent of the
// thread count, so every tile GEMM (and its reduction order) is the same
// whichever thread runs it.
constexpr std::size_t kTilePixels = 256;

template <typename T>
using RowMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowMap = Eigen::Map<RowMatrix<T>>;
template <typename T>
using ConstRowMap = Eigen::Map<const RowMatrix<T>>;

struct Geometry {
  std::size_t in_w, cin, fh, fw, cout, sy, sx, out_h, out_w;

  std::size_t taps() const { return fh * fw * cin; }
  std::size_t pixels() const { return out_h * out_w; }
};

// Rows [p0, p0+count) of the im2col matrix: row p holds the window of output
// pixel p in (ky, kx, ci) order, matching the filter layout.
template <typename T>
void gather_windows(const T* in, const Geometry& geo, std::size_t p0, std::size_t count, T* cols) {
  const std::size_t row_len = geo.fw * geo.cin;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t oy = (p0 + r) / geo.out_w;
    const std::size_t ox = (p0 + r) % geo.out_w;
    T* dst = cols + r * geo.taps();
    for (std::size_t ky = 0; ky < geo.fh; ++ky) {
      const T* src = in + ((oy * geo.sy + ky) * geo.in_w + ox * geo.sx) * geo.cin;
      std::copy(src, src + row_len, dst + ky * row_len);
    }
  }
}

// Valid correlation without bias, out = im2col(in) * W tile by tile.
template <typename T>
void correlate(const T* in, const Geometry& geo, const T* w, T* out) {
  const std::size_t pixels = geo.pixels();
  const std::size_t taps = geo.taps();
  const std::size_t tiles = (pixels + kTilePixels - 1) / kTilePixels;
  const ConstRowMap<T> weights(w, static_cast<Eigen::Index>(taps), static_cast<Eigen::Index>(geo.cout));
  const bool pointwise = geo.fh == 1 && geo.fw == 1 && geo.sy == 1 && geo.sx == 1;

#pragma omp parallel
  {
    std::vector<T> cols(pointwise ? 0 : kTilePixels * taps);
#pragma omp for schedule(static)
    for (std::ptrdiff_t tt = 0; tt < static_cast<std::ptrdiff_t>(tiles); ++tt) {
      const std::size_t p0 = static_cast<std::size_t>(tt) * kTilePixels;
      const std::size_t count = std::min(kTilePixels, pixels - p0);
      const T* lhs = in + p0 * taps;
      if (!pointwise) {
        gather_windows(in, geo, p0, count, cols.data());
        lhs = cols.data();
      }
      const ConstRowMap<T> patch(lhs, static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(taps));
      RowMap<T> result(out + p0 * geo.cout, static_cast<Eigen::Index>(count),
                       static_cast<Eigen::Index>(geo.cout));
      result.noalias() = patch * weights;
    }
  }
}

}  // namespace

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& input, const ConvSpec& spec, const Tensor<T>& filters,
                         std::span<const T> bias) {
  detail::check_conv_args(input, spec, filters, bias);
  Tensor<T> output(spec.output_shape(input.shape()));
  const Geometry geo{input.dim(1),      spec.in_channels, spec.filter_height, spec.filter_width,
                     spec.out_channels, spec.stride_h,    spec.stride_w,      output.dim(0),
                     output.dim(1)};
  correlate(input.data(), geo, filters.data(), output.data());
  if (spec.has_bias) {
    T* out = output.data();
    for (std::size_t p = 0; p < geo.pixels(); ++p) {
      for (std::size_t co = 0; co < geo.cout; ++co) out[p * geo.cout + co] += bias[co];
    }
  }
  return output;
}

template <typename T>
ConvGradients<T> conv2d_backward(const Tensor<T>& grad_out, const Tensor<T>& input, const ConvSpec& spec,
                                 const Tensor<T>& filters) {
  if (filters.shape() != spec.filter_shape()) {
    throw DimensionError("filter tensor " + shape_string(filters.shape()) + " does not match spec");
  }
  const Shape out_shape = spec.output_shape(input.shape());
  if (grad_out.shape() != out_shape) {
    throw DimensionError("upstream gradient " + shape_string(grad_out.shape()) + " does not match output " +
                         shape_string(out_shape));
  }
  const Geometry geo{input.dim(1),      spec.in_channels, spec.filter_height, spec.filter_width,
                     spec.out_channels, spec.stride_h,    spec.stride_w,      out_shape[0],
                     out_shape[1]};
  const std::size_t in_h = input.dim(0);
  const std::size_t in_w = input.dim(1);
  const std::size_t fh = geo.fh;
  const std::size_t fw = geo.fw;
  const std::size_t cin = geo.cin;
  const std::size_t cout = geo.cout;
  const std::size_t taps = geo.taps();
  const std::size_t pixels = geo.pixels();
  const T* in = input.data();
  const T* g = grad_out.data();
  const T* w = filters.data();

  ConvGradients<T> grads{Tensor<T>(input.shape()), Tensor<T>(spec.filter_shape()), std::nullopt};
  T* gin = grads.input.data();

  if (geo.sy == 1 && geo.sx == 1) {
    // Full correlation of the zero-bordered upstream gradient with the
    // flipped filters transposed to [fh, fw, cout, cin].
    const std::size_t pad_w = geo.out_w + 2 * (fw - 1);
    const std::size_t pad_h = geo.out_h + 2 * (fh - 1);
    std::vector<T> padded(pad_h * pad_w * cout, T{0});
    for (std::size_t oy = 0; oy < geo.out_h; ++oy) {
      std::copy(g + oy * geo.out_w * cout, g + (oy + 1) * geo.out_w * cout,
                padded.begin() + ((oy + fh - 1) * pad_w + (fw - 1)) * cout);
    }
    std::vector<T> flipped(filters.size());
    for (std::size_t ky = 0; ky < fh; ++ky) {
      for (std::size_t kx = 0; kx < fw; ++kx) {
        const std::size_t src_tap = (fh - 1 - ky) * fw + (fw - 1 - kx);
        const std::size_t dst_tap = ky * fw + kx;
        for (std::size_t ci = 0; ci < cin; ++ci) {
          for (std::size_t co = 0; co < cout; ++co) {
            flipped[(dst_tap * cout + co) * cin + ci] = w[(src_tap * cin + ci) * cout + co];
          }
        }
      }
    }
    const Geometry full{pad_w, cout, fh, fw, cin, 1, 1, in_h, in_w};
    correlate(padded.data(), full, flipped.data(), gin);
  } else {
    // Strided: column gradients G * W^T per tile, scattered back in pixel
    // order so overlapping windows accumulate deterministically.
    const ConstRowMap<T> weights(w, static_cast<Eigen::Index>(taps), static_cast<Eigen::Index>(cout));
    std::vector<T> dcols(pixels * taps);
    const std::size_t tiles = (pixels + kTilePixels - 1) / kTilePixels;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t tt = 0; tt < static_cast<std::ptrdiff_t>(tiles); ++tt) {
      const std::size_t p0 = static_cast<std::size_t>(tt) * kTilePixels;
      const std::size_t count = std::min(kTilePixels, pixels - p0);
      const ConstRowMap<T> upstream(g + p0 * cout, static_cast<Eigen::Index>(count),
                                    static_cast<Eigen::Index>(cout));
      RowMap<T> result(dcols.data() + p0 * taps, static_cast<Eigen::Index>(count),
                       static_cast<Eigen::Index>(taps));
      result.noalias() = upstream * weights.transpose();
    }
    const std::size_t row_len = fw * cin;
    for (std::size_t p = 0; p < pixels; ++p) {
      const std::size_t oy = p / geo.out_w;
      const std::size_t ox = p % geo.out_w;
      const T* src = dcols.data() + p * taps;
      for (std::size_t ky = 0; ky < fh; ++ky) {
        T* dst = gin + ((oy * geo.sy + ky) * in_w + ox * geo.sx) * cin;
        for (std::size_t k = 0; k < row_len; ++k) dst[k] += src[ky * row_len + k];
      }
    }
  }

  // grad_filters = sum over tiles, in tile order, of im2col(tile)^T * G(tile).
  {
    RowMap<T> gw(grads.filters.data(), static_cast<Eigen::Index>(taps), static_cast<Eigen::Index>(cout));
    const bool pointwise = fh == 1 && fw == 1 && geo.sy == 1 && geo.sx == 1;
    std::vector<T> cols(pointwise ? 0 : kTilePixels * taps);
    for (std::size_t p0 = 0; p0 < pixels; p0 += kTilePixels) {
      const std::size_t count = std::min(kTilePixels, pixels - p0);
      const T* lhs = in + p0 * taps;
      if (!pointwise) {
        gather_windows(in, geo, p0, count, cols.data());
        lhs = cols.data();
      }
      const ConstRowMap<T> patch(lhs, static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(taps));
      const ConstRowMap<T> upstream(g + p0 * cout, static_cast<Eigen::Index>(count),
                                    static_cast<Eigen::Index>(cout));
      gw.noalias() += patch.transpose() * upstream;
    }
  }

  if (spec.has_bias) {
    Tensor<T> gb(Shape{cout});
    for (std::size_t p = 0; p < pixels; ++p) {
      for (std::size_t co = 0; co < cout; ++co) gb[co] += g[p * cout + co];
    }
    grads.bias = std::move(gb);
  }
  return grads;
}

template Tensor<float> conv2d_forward<float>(const Tensor<float>&, const ConvSpec&, const Tensor<float>&,
                                             std::span<const float>);
template Tensor<double> conv2d_forward<double>(const Tensor<double>&, const ConvSpec&, const Tensor<double>&,
                                               std::span<const double>);
template ConvGradients<float> conv2d_backward<float>(const Tensor<float>&, const Tensor<float>&,
                                                     const ConvSpec&, const Tensor<float>&);
template ConvGradients<double> conv2d_backward<double>(const Tensor<double>&, const Tensor<double>&,
                                                       const ConvSpec&, const Tensor<double>&);

}  // namespace csnet
