#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace csnet {

struct CsNetConfig {
  std::size_t block_size = 32;
  double sampling_ratio = 0.1;
  std::size_t deep_depth = 5;  // total layers in the deep reconstruction stack
  std::size_t deep_width = 64;
  std::size_t deep_filter = 3;
  bool final_relu = false;
  std::uint64_t seed = 0;

  // floor(ratio * B^2); a 1e-9 guard absorbs decimal ratios such as 0.29
  // whose binary product falls just below an integer.
  std::size_t measurements() const;
  std::size_t block_pixels() const { return block_size * block_size; }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

std::size_t measurements_for(double ratio, std::size_t block_size);

struct LearningRateStage {
  std::size_t first_epoch = 1;  // inclusive, 1-based
  std::size_t last_epoch = 1;   // inclusive
  double rate = 1e-3;
};

struct TrainSchedule {
  std::size_t epochs = 10;
  std::size_t iterations_per_epoch = 100;
  std::size_t batch_size = 16;
  std::vector<LearningRateStage> stages;

  // Stages must cover 1..epochs contiguously with positive rates.
  void validate() const;
  double rate_for_epoch(std::size_t epoch) const;
};

// 100 epochs x 1400 iterations x batch 64; 1e-3 / 1e-4 / 1e-5 over epochs
// 1-50 / 51-80 / 81-100.
TrainSchedule paper_schedule();

// 10 epochs x 100 iterations x batch 16 with the same 50/30/20 split of the
// learning-rate stages.
TrainSchedule desk_schedule();

// Stages scaled from the 50/30/20 split onto `epochs` epochs.
std::vector<LearningRateStage> scaled_stages(std::size_t epochs);

}  // namespace csnet
