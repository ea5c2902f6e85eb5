#include <utility>
#include "csnet/errors.hpp"
#include "csnet/netcore/conv.hpp"
#include "csnet/netcore/gradcheck.hpp"
#include "csnet/netcore/init.hpp"
#include "csnet/netcore/layers.hpp"
#include "support.hpp"

using namespace csnet;

TEST(Relu, Forward) {
  auto y = relu_forward(Tensor<double>({3}, {-1, 0, 2}));
  EXPECT_EQ(y, Tensor<double>({3}, {0, 0, 2}));
  auto pos = test::random_tensor({10}, 1, 0.1, 1.0);
  EXPECT_EQ(relu_forward(pos), pos);
}

TEST(Relu, BackwardGates) {
  auto g = relu_backward(Tensor<double>({2}, {5, 7}), Tensor<double>({2}, {-1, 3}));
  EXPECT_EQ(g, Tensor<double>({2}, {0, 7}));
  auto z = relu_backward(Tensor<double>({1}, {4}), Tensor<double>({1}, {0}));
  EXPECT_EQ(z[0], 0.0);
  EXPECT_THROW(relu_backward(Tensor<double>({2}), Tensor<double>({3})), DimensionError);
}

TEST(Relu, Idempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = test::random_tensor({6, 6, 2}, seed);
    auto once = relu_forward(x);
    EXPECT_EQ(relu_forward(once), once);
  }
}

TEST(Mse, ZeroWhenEqual) {
  auto x = test::random_tensor({2, 3, 3, 1}, 1);
  auto r = mse_loss(x, x, 2);
  EXPECT_EQ(r.loss, 0.0);
  for (double v : r.grad.values()) EXPECT_EQ(v, 0.0);
}

TEST(Mse, ScalarExample) {
  auto r = mse_loss(Tensor<double>({1}, {3}), Tensor<double>({1}, {1}), 1);
  EXPECT_EQ(r.loss, 2.0);
  EXPECT_EQ(r.grad[0], 2.0);
}

TEST(Mse, MatchesScalarLoopAndFiniteDifferences) {
  auto pred = test::random_tensor({4, 3, 3, 1}, 2);
  auto target = test::random_tensor({4, 3, 3, 1}, 3);
  double oracle = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    double norm = 0.0;
    for (std::size_t k = 0; k < 9; ++k) {
      const double d = pred[n * 9 + k] - target[n * 9 + k];
      norm += d * d;
    }
    oracle += norm;
  }
  oracle /= 2.0 * 4.0;
  auto r = mse_loss(pred, target, 4);
  EXPECT_NEAR(r.loss, oracle, 1e-12);
  auto fd = finite_diff_grad([&](const Tensor<double>& p) { return mse_loss(p, target, 4).loss; }, pred, 1e-6);
  EXPECT_LT(max_relative_error(r.grad, fd), 1e-6);
}

TEST(Mse, NonNegativeAndErrors) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = test::random_tensor({5}, seed), b = test::random_tensor({5}, seed + 50);
    EXPECT_GT(mse_loss(a, b, 1).loss, 0.0);
  }
  EXPECT_THROW(mse_loss(Tensor<double>({2}), Tensor<double>({3}), 1), DimensionError);
  EXPECT_THROW(mse_loss(Tensor<double>({2}), Tensor<double>({2}), 0), ConfigError);
}

TEST(HeInit, Deterministic) {
  Rng a(5), b(5);
  EXPECT_EQ(he_init<double>({3, 3, 2, 4}, 18, a), he_init<double>({3, 3, 2, 4}, 18, b));
}

TEST(HeInit, EmpiricalStd) {
  for (const auto [fan_in, target] : std::vector<std::pair<std::size_t, double>>{{1000, std::sqrt(2.0 / 1000)}, {2, 1.0}}) {
    Rng rng(fan_in);
    auto t = he_init<double>({100000}, fan_in, rng);
    double s1 = 0, s2 = 0;
    for (double v : t.values()) {
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / 1e5;
    const double sd = std::sqrt(s2 / 1e5 - mean * mean);
    EXPECT_NEAR(sd, target, 0.05 * target);
    EXPECT_NEAR(mean, 0.0, 0.02 * target);
  }
  Rng rng(0);
  EXPECT_THROW(he_init<double>({2}, 0, rng), ConfigError);
}

TEST(FiniteDiff, HalfSquaredNorm) {
  auto g = finite_diff_grad(
      [](const Tensor<double>& x) {
        double s = 0;
        for (double v : x.values()) s += v * v;
        return s / 2;
      },
      Tensor<double>({2}, {3, -1}), 1e-6);
  EXPECT_NEAR(g[0], 3.0, 1e-6);
  EXPECT_NEAR(g[1], -1.0, 1e-6);
}

TEST(FiniteDiff, ConstantFunction) {
  auto g = finite_diff_grad([](const Tensor<double>&) { return 4.0; }, test::random_tensor({5}, 1), 1e-6);
  for (double v : g.values()) EXPECT_EQ(v, 0.0);
}

TEST(FiniteDiff, ConvReluMseChain) {
  const ConvSpec spec{3, 3, 1, 2, 1, 1, true};
  auto x = test::random_tensor({4, 4, 1}, 11);
  auto w = test::random_tensor(spec.filter_shape(), 12);
  auto b = test::random_tensor({2}, 13, -0.1, 0.1);
  auto target = test::random_tensor({2, 2, 2}, 14);
  auto loss = [&](const Tensor<double>& xi, const Tensor<double>& wi) {
    return mse_loss(relu_forward(conv2d_forward(xi, spec, wi, std::as_const(b).values())), target, 1).loss;
  };
  auto pre = conv2d_forward(x, spec, w, std::as_const(b).values());
  auto m = mse_loss(relu_forward(pre), target, 1);
  auto grads = conv2d_backward(relu_backward(m.grad, pre), x, spec, w);
  EXPECT_LT(max_relative_error(grads.input, finite_diff_grad([&](const Tensor<double>& p) { return loss(p, w); }, x, 1e-6)), 1e-4);
  EXPECT_LT(max_relative_error(grads.filters, finite_diff_grad([&](const Tensor<double>& p) { return loss(x, p); }, w, 1e-6)), 1e-4);
}
