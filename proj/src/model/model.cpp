#include "csnet/model/model.hpp"

#include "csnet/netcore/init.hpp"

namespace csnet {

template <typename T>
ConvSpec CsNetModel<T>::sampling_spec() const {
  const std::size_t b = config.block_size;
  return {b, b, 1, config.measurements(), b, b, false};
}

template <typename T>
ConvSpec CsNetModel<T>::init_spec() const {
  return {1, 1, config.measurements(), config.block_pixels(), 1, 1, false};
}

template <typename T>
ConvSpec CsNetModel<T>::deep_spec(std::size_t layer) const {
  const Shape shape = deep_filter_shape(config, layer);
  return {shape[0], shape[1], shape[2], shape[3], 1, 1, true};
}

template <typename T>
std::vector<Tensor<T>*> CsNetModel<T>::parameters() {
  std::vector<Tensor<T>*> out{&sampling_filters, &init_filters};
  for (auto& layer : deep_layers) {
    out.push_back(&layer.filters);
    out.push_back(&layer.bias);
  }
  return out;
}

template <typename T>
std::vector<const Tensor<T>*> CsNetModel<T>::parameters() const {
  std::vector<const Tensor<T>*> out{&sampling_filters, &init_filters};
  for (const auto& layer : deep_layers) {
    out.push_back(&layer.filters);
    out.push_back(&layer.bias);
  }
  return out;
}

template <typename T>
std::size_t CsNetModel<T>::parameter_count() const {
  std::size_t total = 0;
  for (const Tensor<T>* p : parameters()) total += p->size();
  return total;
}

Shape deep_filter_shape(const CsNetConfig& config, std::size_t layer) {
  const std::size_t f = config.deep_filter;
  const std::size_t d = config.deep_width;
  const std::size_t last = config.deep_depth - 1;
  const std::size_t cin = layer == 0 ? 1 : d;
  const std::size_t cout = layer == last ? 1 : d;
  return {f, f, cin, cout};
}

template <typename T>
CsNetModel<T> zero_model(const CsNetConfig& config) {
  config.validate();
  CsNetModel<T> model;
  model.config = config;
  const std::size_t b = config.block_size;
  const std::size_t nb = config.measurements();
  model.sampling_filters = Tensor<T>({b, b, 1, nb});
  model.init_filters = Tensor<T>({1, 1, nb, b * b});
  for (std::size_t i = 0; i < config.deep_depth; ++i) {
    const Shape shape = deep_filter_shape(config, i);
    model.deep_layers.push_back({Tensor<T>(shape), Tensor<T>(Shape{shape[3]})});
  }
  return model;
}

template <typename T>
CsNetModel<T> build_model(const CsNetConfig& config) {
  CsNetModel<T> model = zero_model<T>(config);
  Rng rng(config.seed);
  auto init = [&rng](Tensor<T>& filters) {
    const Shape& s = filters.shape();
    filters = he_init<T>(s, s[0] * s[1] * s[2], rng);
  };
  init(model.sampling_filters);
  init(model.init_filters);
  for (auto& layer : model.deep_layers) init(layer.filters);
  return model;
}

template <typename T>
MeasurementMatrix export_sampling_matrix(const CsNetModel<T>& model) {
  const std::size_t nb = model.config.measurements();
  MeasurementMatrix matrix(nb, model.config.block_size);
  for (std::size_t pixel = 0; pixel < matrix.cols(); ++pixel) {
    for (std::size_t k = 0; k < nb; ++k) {
      matrix.at(k, pixel) = static_cast<double>(model.sampling_filters[pixel * nb + k]);
    }
  }
  return matrix;
}

template <typename T>
void import_sampling_matrix(CsNetModel<T>& model, const MeasurementMatrix& matrix) {
  const std::size_t nb = model.config.measurements();
  if (matrix.rows != nb || matrix.block_size != model.config.block_size) {
    throw DimensionError("matrix " + std::to_string(matrix.rows) + "x" + std::to_string(matrix.cols()) +
                         " does not fit a model with n_B=" + std::to_string(nb) + ", B=" +
                         std::to_string(model.config.block_size));
  }
  for (std::size_t pixel = 0; pixel < matrix.cols(); ++pixel) {
    for (std::size_t k = 0; k < nb; ++k) {
      model.sampling_filters[pixel * nb + k] = static_cast<T>(matrix.at(k, pixel));
    }
  }
}

template <typename T>
void import_reconstruction_matrix(CsNetModel<T>& model, const std::vector<double>& matrix) {
  const std::size_t nb = model.config.measurements();
  const std::size_t pixels = model.config.block_pixels();
  if (matrix.size() != nb * pixels) {
    throw DimensionError("reconstruction matrix must hold B^2 x n_B = " + std::to_string(pixels * nb) +
                         " entries");
  }
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t pixel = 0; pixel < pixels; ++pixel) {
      model.init_filters[k * pixels + pixel] = static_cast<T>(matrix[pixel * nb + k]);
    }
  }
}

template struct CsNetModel<float>;
template struct CsNetModel<double>;
template CsNetModel<float> build_model<float>(const CsNetConfig&);
template CsNetModel<double> build_model<double>(const CsNetConfig&);
template CsNetModel<float> zero_model<float>(const CsNetConfig&);
template CsNetModel<double> zero_model<double>(const CsNetConfig&);
template MeasurementMatrix export_sampling_matrix(const CsNetModel<float>&);
template MeasurementMatrix export_sampling_matrix(const CsNetModel<double>&);
template void import_sampling_matrix(CsNetModel<float>&, const MeasurementMatrix&);
template void import_sampling_matrix(CsNetModel<double>&, const MeasurementMatrix&);
template void import_reconstruction_matrix(CsNetModel<float>&, const std::vector<double>&);
template void import_reconstruction_matrix(CsNetModel<double>&, const std::vector<double>&);

}  // namespace csnet
