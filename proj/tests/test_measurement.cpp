#include <filesystem>

#include "csnet/bcs/bcs.hpp"
#include "csnet/errors.hpp"
#include "csnet/model/network.hpp"
#include "csnet/netcore/binary_io.hpp"
#include "support.hpp"

using namespace csnet;

namespace {

double max_gram_error(const MeasurementMatrix& m) {
  double worst = 0;
  for (std::size_t a = 0; a < m.rows; ++a)
    for (std::size_t b = 0; b < m.rows; ++b) {
      double s = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) s += m.at(a, c) * m.at(b, c);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST(GaussianMatrix, SquareOrthogonal) {
  Rng rng(1);
  auto m = make_gaussian_matrix(16, 4, rng, true);
  EXPECT_LT(max_gram_error(m), 1e-10);
  double worst = 0;
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = 0; b < 16; ++b) {
      double s = 0;
      for (std::size_t r = 0; r < 16; ++r) s += m.at(r, a) * m.at(r, b);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  EXPECT_LT(worst, 1e-10);
}

TEST(GaussianMatrix, OrthonormalRowsProperty) {
  for (std::size_t b : {4, 8, 16, 32})
    for (double r : {0.1, 0.3, 0.5}) {
      Rng rng(b * 100 + static_cast<std::size_t>(r * 10));
      const std::size_t nb = std::max<std::size_t>(1, static_cast<std::size_t>(r * b * b));
      EXPECT_LT(max_gram_error(make_gaussian_matrix(nb, b, rng, true)), 1e-10) << b << " " << r;
    }
}

TEST(GaussianMatrix, RawEntryStatistics) {
  Rng rng(2);
  auto m = make_gaussian_matrix(64, 16, rng, false);
  double s1 = 0, s2 = 0;
  for (double v : m.entries) {
    s1 += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(m.entries.size());
  const double var = s2 / n - (s1 / n) * (s1 / n);
  EXPECT_NEAR(var, 1.0, 0.1);
}

TEST(GaussianMatrix, DeterministicAndValidated) {
  Rng a(3), b(3);
  EXPECT_EQ(make_gaussian_matrix(10, 8, a, true), make_gaussian_matrix(10, 8, b, true));
  Rng rng(4);
  EXPECT_THROW(make_gaussian_matrix(17, 4, rng, false), ConfigError);
  EXPECT_THROW(make_gaussian_matrix(0, 4, rng, false), ConfigError);
}

TEST(MatrixIo, RoundTripAndLayout) {
  Rng rng(5);
  auto m = make_gaussian_matrix(6, 4, rng, true);
  const auto path = (std::filesystem::temp_directory_path() / "csnet_matrix_test.csmx").string();
  save_matrix(m, path);
  const std::string bytes = read_file(path);
  EXPECT_EQ(bytes.size(), 16u + 6u * 16u * 8u);
  LeReader r(bytes, "mem");
  EXPECT_EQ(r.bytes(4, "magic"), "CSMX");
  EXPECT_EQ(r.u32("version"), 1u);
  EXPECT_EQ(r.u32("n_B"), 6u);
  EXPECT_EQ(r.u32("B2"), 16u);
  EXPECT_EQ(r.f64("first"), m.entries[0]);
  EXPECT_EQ(load_matrix(path), m);

  write_file(path, bytes.substr(0, bytes.size() - 8));
  EXPECT_THROW(load_matrix(path), FormatError);
  std::string bad = bytes;
  bad[12] = 15;
  write_file(path, bad);
  EXPECT_THROW(load_matrix(path), FormatError);
  std::filesystem::remove(path);
}

TEST(BlockSample, IdentityMatrixFlattensBlocks) {
  MeasurementMatrix eye(16, 4);
  for (std::size_t i = 0; i < 16; ++i) eye.at(i, i) = 1.0;
  auto x = test::random_tensor({8, 4, 1}, 1, 0, 1);
  auto y = block_sample(x, eye);
  EXPECT_EQ(y.shape(), (Shape{2, 1, 16}));
  for (std::size_t bi = 0; bi < 2; ++bi)
    for (std::size_t p = 0; p < 16; ++p) EXPECT_EQ(y.at(bi, 0, p), x.at(bi * 4 + p / 4, p % 4, 0));
}

TEST(BlockSample, ZeroImageAndGeometry) {
  Rng rng(6);
  auto phi = make_gaussian_matrix(5, 4, rng, true);
  {
    const auto result = block_sample(Tensor<double>({8, 8, 1}), phi);
    for (double v : result.values()) EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(block_sample(Tensor<double>({9, 8, 1}), phi), GeometryError);
}

TEST(BlockSample, AgreesWithNetworkSampling) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Rng rng(seed);
    auto phi = make_gaussian_matrix(19, 8, rng, true);
    CsNetConfig c;
    c.block_size = 8;
    c.sampling_ratio = 0.3;
    auto model = zero_model<float>(c);
    import_sampling_matrix(model, phi);
    auto x = test::random_tensor({24, 16, 1}, seed + 7, 0, 1);
    auto a = block_sample(x, phi);
    auto b = sample(model, x.cast<float>()).cast<double>();
    EXPECT_LT(test::max_abs_diff(a, b), 1e-5);
  }
}
