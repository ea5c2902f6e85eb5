#pragma once

#include <cstddef>
#include <vector>

#include "csnet/bcs/measurement.hpp"
#include "csnet/model/config.hpp"
#include "csnet/netcore/conv.hpp"
#include "csnet/netcore/tensor.hpp"

namespace csnet {

template <typename T>
struct DeepLayer {
  Tensor<T> filters;
  Tensor<T> bias;
};

/// Learned parameters of the three sub-networks.
///
///   sampling_filters  [B, B, 1, n_B]    rows of the block sampling matrix, no bias
///   init_filters      [1, 1, n_B, B^2]  linear block reconstruction, no bias
///   deep_layers       m layers: [f,f,1,d], [f,f,d,d] x (m-2), [f,f,d,1], each with bias
///
/// The same type carries gradients, one tensor per parameter.
template <typename T>
struct CsNetModel {
  CsNetConfig config;
  Tensor<T> sampling_filters;
  Tensor<T> init_filters;
  std::vector<DeepLayer<T>> deep_layers;

  ConvSpec sampling_spec() const;
  ConvSpec init_spec() const;
  ConvSpec deep_spec(std::size_t layer) const;

  // Fixed order: sampling, init, then filters and bias of each deep layer.
  // This is also the on-disk order.
  std::vector<Tensor<T>*> parameters();
  std::vector<const Tensor<T>*> parameters() const;

  std::size_t parameter_count() const;

  template <typename U>
  CsNetModel<U> cast() const {
    CsNetModel<U> out;
    out.config = config;
    out.sampling_filters = sampling_filters.template cast<U>();
    out.init_filters = init_filters.template cast<U>();
    for (const auto& layer : deep_layers) {
      out.deep_layers.push_back({layer.filters.template cast<U>(), layer.bias.template cast<U>()});
    }
    return out;
  }
};

// Shapes of layer `i` (0-based) for the given config.
Shape deep_filter_shape(const CsNetConfig& config, std::size_t layer);

// He-initialized filters (fan_in = fh*fw*Cin) drawn in parameter order from a
// generator seeded with config.seed; biases zero.
template <typename T>
CsNetModel<T> build_model(const CsNetConfig& config);

// Every tensor zero, shaped for `config`.
template <typename T>
CsNetModel<T> zero_model(const CsNetConfig& config);

// Row k is sampling filter k flattened row-major.
template <typename T>
MeasurementMatrix export_sampling_matrix(const CsNetModel<T>& model);

template <typename T>
void import_sampling_matrix(CsNetModel<T>& model, const MeasurementMatrix& matrix);

// Loads a B^2 x n_B reconstruction matrix (row-major) into init_filters, so
// that initial_reconstruct computes matrix * y per block.
template <typename T>
void import_reconstruction_matrix(CsNetModel<T>& model, const std::vector<double>& matrix);

}  // namespace csnet
