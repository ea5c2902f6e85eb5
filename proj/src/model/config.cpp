#include "csnet/model/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csnet/errors.hpp"

namespace csnet {

std::size_t measurements_for(double ratio, std::size_t block_size) {
  const double count = ratio * static_cast<double>(block_size * block_size);
  return count <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(count + 1e-9));
}

std::size_t CsNetConfig::measurements() const { return measurements_for(sampling_ratio, block_size); }

void CsNetConfig::validate() const {
  if (block_size < 2) throw ConfigError("block_size must be at least 2");
  if (!(sampling_ratio > 0.0 && sampling_ratio <= 1.0)) {
    throw ConfigError("sampling_ratio must lie in (0, 1], got " + std::to_string(sampling_ratio));
  }
  if (measurements() < 1) {
    throw ConfigError("sampling_ratio " + std::to_string(sampling_ratio) + " gives no measurements for block " +
                      std::to_string(block_size));
  }
  if (deep_depth < 1) throw ConfigError("deep_depth must be at least 1");
  if (deep_width < 1) throw ConfigError("deep_width must be at least 1");
  if (deep_filter < 1 || deep_filter % 2 == 0) throw ConfigError("deep_filter must be odd");
}

void TrainSchedule::validate() const {
  if (epochs < 1) throw ConfigError("schedule: epochs must be at least 1");
  if (iterations_per_epoch < 1) throw ConfigError("schedule: iterations_per_epoch must be at least 1");
  if (batch_size < 1) throw ConfigError("schedule: batch_size must be at least 1");
  if (stages.empty()) throw ConfigError("schedule: no learning-rate stages");
  std::size_t next = 1;
  for (const auto& stage : stages) {
    if (stage.first_epoch != next || stage.last_epoch < stage.first_epoch) {
      throw ConfigError("schedule: learning-rate stages must cover epochs contiguously from 1");
    }
    if (!(stage.rate > 0.0)) throw ConfigError("schedule: learning rates must be positive");
    next = stage.last_epoch + 1;
  }
  if (next != epochs + 1) throw ConfigError("schedule: learning-rate stages must end at the last epoch");
}

double TrainSchedule::rate_for_epoch(std::size_t epoch) const {
  for (const auto& stage : stages) {
    if (epoch >= stage.first_epoch && epoch <= stage.last_epoch) return stage.rate;
  }
  throw ConfigError("schedule: no learning rate for epoch " + std::to_string(epoch));
}

std::vector<LearningRateStage> scaled_stages(std::size_t epochs) {
  if (epochs < 3) return {{1, epochs, 1e-3}};
  const std::size_t first = std::max<std::size_t>(1, epochs / 2);
  const std::size_t second = std::max(first + 1, (epochs * 4) / 5);
  if (second >= epochs) return {{1, first, 1e-3}, {first + 1, epochs, 1e-4}};
  return {{1, first, 1e-3}, {first + 1, second, 1e-4}, {second + 1, epochs, 1e-5}};
}

TrainSchedule paper_schedule() { return {100, 1400, 64, scaled_stages(100)}; }

TrainSchedule desk_schedule() { return {10, 100, 16, scaled_stages(10)}; }

}  // namespace csnet
