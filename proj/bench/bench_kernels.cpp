// Tiled im2col/GEMM kernels against the serial direct-summation reference.

#include <benchmark/benchmark.h>

#include "csnet/bcs/bcs.hpp"
#include "csnet/data/synthetic.hpp"
#include "csnet/model/network.hpp"
#include "csnet/netcore/conv.hpp"

namespace {

using namespace csnet;

Tensor<float> random_input(const Shape& shape, std::uint64_t seed) {
  Rng rng(seed);
  Tensor<float> t(shape);
  for (auto& v : t.values()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return t;
}

// args: image side, in channels, out channels
ConvSpec deep_spec(const benchmark::State& state) {
  return {3, 3, static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(2)), 1, 1, true};
}

void set_counters(benchmark::State& state, const ConvSpec& spec, std::size_t side) {
  const double out = static_cast<double>((side - 2) * (side - 2));
  const double macs = out * static_cast<double>(spec.filter_height * spec.filter_width * spec.in_channels *
                                                spec.out_channels);
  state.counters["MAC/s"] = benchmark::Counter(macs, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_ConvForward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const ConvSpec spec = deep_spec(state);
  const auto x = random_input({side, side, spec.in_channels}, 1);
  const auto w = random_input(spec.filter_shape(), 2);
  const auto b = random_input({spec.out_channels}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d_forward(x, spec, w, b.values()));
  set_counters(state, spec, side);
}

void BM_ConvForwardReference(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const ConvSpec spec = deep_spec(state);
  const auto x = random_input({side, side, spec.in_channels}, 1);
  const auto w = random_input(spec.filter_shape(), 2);
  const auto b = random_input({spec.out_channels}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::conv2d_forward(x, spec, w, b.values()));
  set_counters(state, spec, side);
}

void BM_ConvBackward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const ConvSpec spec = deep_spec(state);
  const auto x = random_input({side, side, spec.in_channels}, 1);
  const auto w = random_input(spec.filter_shape(), 2);
  const auto g = random_input(spec.output_shape(x.shape()), 4);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d_backward(g, x, spec, w));
  set_counters(state, spec, side);
}

void BM_ConvBackwardReference(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const ConvSpec spec = deep_spec(state);
  const auto x = random_input({side, side, spec.in_channels}, 1);
  const auto w = random_input(spec.filter_shape(), 2);
  const auto g = random_input(spec.output_shape(x.shape()), 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::conv2d_backward(g, x, spec, w));
  set_counters(state, spec, side);
}

void BM_CsNetForward256(benchmark::State& state) {
  const auto model = build_model<float>(CsNetConfig{});
  Rng rng(5);
  const auto image = synthetic_image(256, 256, rng).cast<float>();
  for (auto _ : state) benchmark::DoNotOptimize(forward(model, image));
}

void BM_Spl256(benchmark::State& state) {
  Rng rng(5);
  const auto image = synthetic_image(256, 256, rng);
  Rng prng(6);
  const auto phi = make_gaussian_matrix(measurements_for(0.1, 32), 32, prng, true);
  const auto y = block_sample(image, phi);
  const auto tilde = mmse_matrix(phi, ar1_autocorrelation(32, 0.95));
  SplConfig config;
  config.max_iters = static_cast<std::size_t>(state.range(0));
  config.rel_tol = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(spl_reconstruct(y, phi, tilde, config));
}

}  // namespace

BENCHMARK(BM_ConvForward)->Args({34, 1, 64})->Args({34, 64, 64})->Args({66, 64, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvForwardReference)->Args({34, 1, 64})->Args({34, 64, 64})->Args({66, 64, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackward)->Args({34, 64, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackwardReference)->Args({34, 64, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CsNetForward256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spl256)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
