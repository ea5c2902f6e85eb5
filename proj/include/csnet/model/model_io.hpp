#pragma once

#include <optional>
#include <string>

#include "csnet/model/model.hpp"

namespace csnet {

// CSNT model file, little-endian:
//   "CSNT" | u32 version = 1 | u32 B, n_B, m, d, f
//   | f32 tensors in parameter order (sampling, init, layer 1 filters, layer 1 bias, ...)
// Shapes follow from the header. The ratio is recovered as n_B / B^2;
// final_relu and seed are not stored.
template <typename T>
std::string encode_model(const CsNetModel<T>& model);

template <typename T>
void save_model(const CsNetModel<T>& model, const std::string& path);

// Throws FormatError naming the offending field. When `expected_ratio` is
// given, n_B must equal floor(ratio * B^2).
template <typename T>
CsNetModel<T> decode_model(const std::string& bytes, const std::string& source,
                           std::optional<double> expected_ratio = std::nullopt);

template <typename T>
CsNetModel<T> load_model(const std::string& path, std::optional<double> expected_ratio = std::nullopt);

}  // namespace csnet
