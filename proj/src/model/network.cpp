#include "csnet/model/network.hpp"

#include "csnet/model/padding.hpp"
#include "csnet/netcore/blocks.hpp"
#include "csnet/netcore/layers.hpp"

namespace csnet {

namespace {

template <typename T>
void require_image(const Tensor<T>& image, std::size_t block_size) {
  if (image.rank() != 3 || image.dim(2) != 1) {
    throw DimensionError("expected a [H,W,1] image, got " + shape_string(image.shape()));
  }
  if (image.dim(0) % block_size != 0 || image.dim(1) % block_size != 0) {
    throw GeometryError("image " + shape_string(image.shape()) + " is not a multiple of block size " +
                        std::to_string(block_size));
  }
}

template <typename T>
std::span<const T> bias_of(const DeepLayer<T>& layer) {
  return layer.bias.values();
}

// Activations kept for the backward pass of one sample.
template <typename T>
struct Trace {
  Tensor<T> image;
  Tensor<T> measurements;
  Tensor<T> block_vectors;            // [h, w, B^2] before combine
  std::vector<Tensor<T>> padded;      // padded input of each deep layer
  std::vector<Tensor<T>> activations; // output of each deep layer before ReLU
  Tensor<T> output;
};

template <typename T>
bool relu_after(const CsNetModel<T>& model, std::size_t layer) {
  return layer + 1 < model.deep_layers.size() || model.config.final_relu;
}

template <typename T>
Trace<T> forward_trace(const CsNetModel<T>& model, const Tensor<T>& image) {
  Trace<T> trace;
  trace.image = image;
  trace.measurements = sample(model, image);
  trace.block_vectors = conv2d_forward(trace.measurements, model.init_spec(), model.init_filters);
  Tensor<T> x = combine_blocks(trace.block_vectors, model.config.block_size);
  const std::size_t pad = (model.config.deep_filter - 1) / 2;
  for (std::size_t i = 0; i < model.deep_layers.size(); ++i) {
    trace.padded.push_back(pad_symmetric(x, pad));
    Tensor<T> y = conv2d_forward(trace.padded.back(), model.deep_spec(i), model.deep_layers[i].filters,
                                 bias_of(model.deep_layers[i]));
    x = relu_after(model, i) ? relu_forward(y) : y;
    trace.activations.push_back(std::move(y));
  }
  trace.output = std::move(x);
  return trace;
}

// Accumulates d(loss)/d(params) for one sample into `grads` given the
// gradient at the network output.
template <typename T>
void backward(const CsNetModel<T>& model, const Trace<T>& trace, Tensor<T> grad, CsNetModel<T>& grads) {
  const std::size_t pad = (model.config.deep_filter - 1) / 2;
  for (std::size_t i = model.deep_layers.size(); i-- > 0;) {
    if (relu_after(model, i)) grad = relu_backward(grad, trace.activations[i]);
    ConvGradients<T> g = conv2d_backward(grad, trace.padded[i], model.deep_spec(i), model.deep_layers[i].filters);
    grads.deep_layers[i].filters = std::move(g.filters);
    grads.deep_layers[i].bias = std::move(*g.bias);
    grad = pad_symmetric_backward(g.input, pad);
  }
  Tensor<T> grad_vectors = split_blocks(grad, model.config.block_size);
  ConvGradients<T> gi = conv2d_backward(grad_vectors, trace.measurements, model.init_spec(), model.init_filters);
  grads.init_filters = std::move(gi.filters);
  ConvGradients<T> gs = conv2d_backward(gi.input, trace.image, model.sampling_spec(), model.sampling_filters);
  grads.sampling_filters = std::move(gs.filters);
}

template <typename T>
void add_into(CsNetModel<T>& total, const CsNetModel<T>& part) {
  auto dst = total.parameters();
  auto src = part.parameters();
  for (std::size_t p = 0; p < dst.size(); ++p) {
    T* d = dst[p]->data();
    const T* s = src[p]->data();
    for (std::size_t i = 0; i < dst[p]->size(); ++i) d[i] += s[i];
  }
}

}  // namespace

template <typename T>
Tensor<T> sample(const CsNetModel<T>& model, const Tensor<T>& image) {
  require_image(image, model.config.block_size);
  return conv2d_forward(image, model.sampling_spec(), model.sampling_filters);
}

template <typename T>
Tensor<T> initial_reconstruct(const CsNetModel<T>& model, const Tensor<T>& measurements) {
  if (measurements.rank() != 3 || measurements.dim(2) != model.config.measurements()) {
    throw DimensionError("measurements " + shape_string(measurements.shape()) + " do not carry n_B=" +
                         std::to_string(model.config.measurements()) + " channels");
  }
  return combine_blocks(conv2d_forward(measurements, model.init_spec(), model.init_filters),
                        model.config.block_size);
}

template <typename T>
Tensor<T> deep_reconstruct(const CsNetModel<T>& model, const Tensor<T>& initial) {
  if (initial.rank() != 3 || initial.dim(2) != 1) {
    throw DimensionError("deep_reconstruct expects [H,W,1], got " + shape_string(initial.shape()));
  }
  const std::size_t pad = (model.config.deep_filter - 1) / 2;
  Tensor<T> x = initial;
  for (std::size_t i = 0; i < model.deep_layers.size(); ++i) {
    x = conv2d_forward(pad_symmetric(x, pad), model.deep_spec(i), model.deep_layers[i].filters,
                       bias_of(model.deep_layers[i]));
    if (relu_after(model, i)) x = relu_forward(x);
  }
  return x;
}

template <typename T>
ForwardResult<T> forward(const CsNetModel<T>& model, const Tensor<T>& image) {
  ForwardResult<T> result;
  result.measurements = sample(model, image);
  result.initial = initial_reconstruct(model, result.measurements);
  result.final = deep_reconstruct(model, result.initial);
  return result;
}

template <typename T>
LossAndGradients<T> loss_and_gradients(const CsNetModel<T>& model, const Tensor<T>& batch) {
  if (batch.rank() != 4 || batch.dim(3) != 1) {
    throw DimensionError("batch must be [N,H,W,1], got " + shape_string(batch.shape()));
  }
  const std::size_t count = batch.dim(0);
  std::vector<double> losses(count, 0.0);
  std::vector<CsNetModel<T>> per_sample(count);
  // Validate geometry up front so no exception escapes the parallel region.
  require_image(batch.slice(0), model.config.block_size);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t nn = 0; nn < static_cast<std::ptrdiff_t>(count); ++nn) {
    const auto n = static_cast<std::size_t>(nn);
    const Tensor<T> image = batch.slice(n);
    Trace<T> trace = forward_trace(model, image);
    MseResult<T> mse = mse_loss(trace.output, image, count);
    losses[n] = mse.loss;
    per_sample[n] = zero_model<T>(model.config);
    backward(model, trace, std::move(mse.grad), per_sample[n]);
  }

  LossAndGradients<T> result{0.0, std::move(per_sample[0])};
  result.loss = losses[0];
  for (std::size_t n = 1; n < count; ++n) {
    result.loss += losses[n];
    add_into(result.gradients, per_sample[n]);
  }
  return result;
}

template <typename T>
CsNetOptimizer<T>::CsNetOptimizer(const CsNetModel<T>& model, AdamHyper hyper) {
  for (const Tensor<T>* p : model.parameters()) states.emplace_back(p->shape(), hyper);
}

template <typename T>
void CsNetOptimizer<T>::set_learning_rate(double rate) {
  for (auto& state : states) state.hyper.learning_rate = rate;
}

template <typename T>
double train_step(CsNetModel<T>& model, const Tensor<T>& batch, CsNetOptimizer<T>& optimizer) {
  LossAndGradients<T> lg = loss_and_gradients(model, batch);
  auto params = model.parameters();
  auto grads = lg.gradients.parameters();
  if (optimizer.states.size() != params.size()) {
    throw DimensionError("optimizer holds " + std::to_string(optimizer.states.size()) + " states for " +
                         std::to_string(params.size()) + " parameters");
  }
  for (std::size_t p = 0; p < params.size(); ++p) adam_update(*params[p], *grads[p], optimizer.states[p]);
  return lg.loss;
}

#define CSNET_INSTANTIATE(T)                                                                    \
  template Tensor<T> sample(const CsNetModel<T>&, const Tensor<T>&);                            \
  template Tensor<T> initial_reconstruct(const CsNetModel<T>&, const Tensor<T>&);               \
  template Tensor<T> deep_reconstruct(const CsNetModel<T>&, const Tensor<T>&);                  \
  template ForwardResult<T> forward(const CsNetModel<T>&, const Tensor<T>&);                    \
  template LossAndGradients<T> loss_and_gradients(const CsNetModel<T>&, const Tensor<T>&);      \
  template struct CsNetOptimizer<T>;                                                            \
  template double train_step(CsNetModel<T>&, const Tensor<T>&, CsNetOptimizer<T>&);

CSNET_INSTANTIATE(float)
CSNET_INSTANTIATE(double)

#undef CSNET_INSTANTIATE

}  // namespace csnet
