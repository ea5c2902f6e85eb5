#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "csnet/data/pipeline.hpp"

namespace csnet {

// Piecewise-smooth test image in [0,1]: a smooth background gradient split by
// random straight edges, with a few filled discs and a mild low-frequency
// texture. Fully determined by the generator state.
Tensor<double> synthetic_image(std::size_t height, std::size_t width, Rng& rng);

// `count` images named <prefix>NNN, all drawn from one Rng(seed).
std::vector<ImageRecord> synthetic_corpus(std::size_t count, std::size_t height, std::size_t width,
                                          std::uint64_t seed, const std::string& prefix = "synth");

// Writes the corpus as PGM files into `directory` (created if missing).
void write_corpus(const std::vector<ImageRecord>& images, const std::string& directory);

}  // namespace csnet
