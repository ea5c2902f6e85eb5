#include "csnet/model/model_io.hpp"

#include "csnet/netcore/binary_io.hpp"

namespace csnet {

namespace {
constexpr std::string_view kMagic = "CSNT";
constexpr std::uint32_t kVersion = 1;
}  // namespace

template <typename T>
std::string encode_model(const CsNetModel<T>& model) {
  const CsNetConfig& c = model.config;
  LeWriter out;
  out.bytes(kMagic);
  out.u32(kVersion);
  out.u32(static_cast<std::uint32_t>(c.block_size));
  out.u32(static_cast<std::uint32_t>(c.measurements()));
  out.u32(static_cast<std::uint32_t>(c.deep_depth));
  out.u32(static_cast<std::uint32_t>(c.deep_width));
  out.u32(static_cast<std::uint32_t>(c.deep_filter));
  for (const Tensor<T>* p : model.parameters()) {
    for (T v : p->values()) out.f32(static_cast<float>(v));
  }
  return out.buffer();
}

template <typename T>
void save_model(const CsNetModel<T>& model, const std::string& path) {
  write_file(path, encode_model(model));
}

template <typename T>
CsNetModel<T> decode_model(const std::string& bytes, const std::string& source,
                           std::optional<double> expected_ratio) {
  LeReader in(bytes, source);
  if (in.bytes(4, "magic") != kMagic) in.fail("bad magic (expected CSNT)");
  const std::uint32_t version = in.u32("version");
  if (version != kVersion) in.fail("unsupported version " + std::to_string(version));

  const std::uint32_t block = in.u32("B");
  const std::uint32_t nb = in.u32("n_B");
  const std::uint32_t depth = in.u32("m");
  const std::uint32_t width = in.u32("d");
  const std::uint32_t filter = in.u32("f");
  if (block < 2 || block > 4096) in.fail("field B=" + std::to_string(block) + " out of range");
  if (nb < 1 || nb > block * block) {
    in.fail("field n_B=" + std::to_string(nb) + " inconsistent with B=" + std::to_string(block));
  }
  if (expected_ratio && measurements_for(*expected_ratio, block) != nb) {
    in.fail("field n_B=" + std::to_string(nb) + " inconsistent with ratio " + std::to_string(*expected_ratio) +
            " and B=" + std::to_string(block));
  }
  if (depth < 1 || depth > 1024) in.fail("field m=" + std::to_string(depth) + " out of range");
  if (width < 1 || width > 65536) in.fail("field d=" + std::to_string(width) + " out of range");
  if (filter < 1 || filter % 2 == 0 || filter > 255) in.fail("field f=" + std::to_string(filter) + " must be odd");

  CsNetConfig config;
  config.block_size = block;
  config.sampling_ratio = static_cast<double>(nb) / static_cast<double>(block * block);
  config.deep_depth = depth;
  config.deep_width = width;
  config.deep_filter = filter;

  CsNetModel<T> model = zero_model<T>(config);
  const std::vector<std::string> names = [&] {
    std::vector<std::string> n{"sampling_filters", "init_filters"};
    for (std::uint32_t i = 1; i <= depth; ++i) {
      n.push_back("deep layer " + std::to_string(i) + " filters");
      n.push_back("deep layer " + std::to_string(i) + " bias");
    }
    return n;
  }();
  auto params = model.parameters();
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor<T>& tensor = *params[p];
    if (in.remaining() < tensor.size() * 4) in.fail("truncated while reading " + names[p]);
    for (T& v : tensor.values()) v = static_cast<T>(in.f32(names[p].c_str()));
  }
  if (in.remaining() != 0) in.fail(std::to_string(in.remaining()) + " trailing bytes after deep layer biases");
  return model;
}

template <typename T>
CsNetModel<T> load_model(const std::string& path, std::optional<double> expected_ratio) {
  return decode_model<T>(read_file(path), path, expected_ratio);
}

template std::string encode_model(const CsNetModel<float>&);
template std::string encode_model(const CsNetModel<double>&);
template void save_model(const CsNetModel<float>&, const std::string&);
template void save_model(const CsNetModel<double>&, const std::string&);
template CsNetModel<float> decode_model<float>(const std::string&, const std::string&, std::optional<double>);
template CsNetModel<double> decode_model<double>(const std::string&, const std::string&, std::optional<double>);
template CsNetModel<float> load_model<float>(const std::string&, std::optional<double>);
template CsNetModel<double> load_model<double>(const std::string&, std::optional<double>);

}  // namespace csnet
