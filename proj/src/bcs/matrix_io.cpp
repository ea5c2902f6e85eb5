#include "csnet/bcs/measurement.hpp"
#include "csnet/netcore/binary_io.hpp"

#include <cmath>

namespace csnet {

void save_matrix(const MeasurementMatrix& matrix, const std::string& path) {
  LeWriter out;
  out.bytes("CSMX");
  out.u32(1);
  out.u32(static_cast<std::uint32_t>(matrix.rows));
  out.u32(static_cast<std::uint32_t>(matrix.cols()));
  for (double v : matrix.entries) out.f64(v);
  write_file(path, out.buffer());
}

MeasurementMatrix load_matrix(const std::string& path) {
  const std::string bytes = read_file(path);
  LeReader in(bytes, path);
  if (in.bytes(4, "magic") != "CSMX") in.fail("bad magic (expected CSMX)");
  const std::uint32_t version = in.u32("version");
  if (version != 1) in.fail("unsupported version " + std::to_string(version));
  const std::uint32_t rows = in.u32("n_B");
  const std::uint32_t cols = in.u32("B^2");
  const auto block = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cols))));
  if (cols == 0 || block * block != cols) in.fail("field B^2=" + std::to_string(cols) + " is not a square");
  if (rows < 1 || rows > cols) in.fail("field n_B=" + std::to_string(rows) + " inconsistent with B^2");
  if (in.remaining() != static_cast<std::size_t>(rows) * cols * 8) {
    in.fail("entries hold " + std::to_string(in.remaining()) + " bytes, expected " +
            std::to_string(static_cast<std::size_t>(rows) * cols * 8));
  }
  MeasurementMatrix m(rows, block);
  for (double& v : m.entries) v = in.f64("entries");
  return m;
}

}  // namespace csnet
