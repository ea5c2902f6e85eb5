#include "csnet/errors.hpp"
#include "csnet/netcore/adam.hpp"
#include "support.hpp"

using namespace csnet;

TEST(Adam, ZeroGradientIsIdentity) {
  auto p = test::random_tensor({3, 4}, 1);
  AdamState<double> state(p.shape(), AdamHyper{});
  auto r = adam_step(p, Tensor<double>(p.shape()), state);
  EXPECT_TRUE(test::bit_identical(r.param, p));
  EXPECT_EQ(r.state.step_count, 1u);
  EXPECT_EQ(state.step_count, 0u);
}

TEST(Adam, FirstStepIsSignedLearningRate) {
  AdamHyper h;
  h.learning_rate = 0.01;
  Tensor<double> p({2}, {1.0, -2.0});
  Tensor<double> g({2}, {0.3, -5.0});
  auto r = adam_step(p, g, AdamState<double>(p.shape(), h));
  EXPECT_NEAR(r.param[0], 1.0 - 0.01, 1e-9);
  EXPECT_NEAR(r.param[1], -2.0 + 0.01, 1e-9);
}

TEST(Adam, MatchesScalarRecurrence) {
  const double lr = 0.001, b1 = 0.9, b2 = 0.999, eps = 1e-8, g = 0.5;
  double m = 0, v = 0, x = 0.25;
  std::vector<double> oracle;
  for (int t = 1; t <= 3; ++t) {
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    const double mh = m / (1 - std::pow(b1, t));
    const double vh = v / (1 - std::pow(b2, t));
    x -= lr * mh / (std::sqrt(vh) + eps);
    oracle.push_back(x);
  }
  Tensor<double> p({1}, {0.25});
  AdamState<double> state(p.shape(), AdamHyper{lr, b1, b2, eps});
  for (int t = 0; t < 3; ++t) {
    adam_update(p, Tensor<double>({1}, {g}), state);
    EXPECT_NEAR(p[0], oracle[static_cast<std::size_t>(t)], 1e-12);
  }
  EXPECT_EQ(state.step_count, 3u);
}

TEST(Adam, PureStepMatchesInPlace) {
  auto p = test::random_tensor({10}, 2);
  auto g = test::random_tensor({10}, 3);
  AdamState<double> s(p.shape(), AdamHyper{});
  auto r = adam_step(p, g, s);
  adam_update(p, g, s);
  EXPECT_TRUE(test::bit_identical(r.param, p));
  EXPECT_TRUE(test::bit_identical(r.state.first_moment, s.first_moment));
}

TEST(Adam, ShapeMismatch) {
  Tensor<double> p({3});
  AdamState<double> s(p.shape(), AdamHyper{});
  EXPECT_THROW(adam_step(p, Tensor<double>({4}), s), DimensionError);
}
