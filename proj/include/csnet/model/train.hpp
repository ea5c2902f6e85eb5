#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "csnet/model/config.hpp"
#include "csnet/model/network.hpp"

namespace csnet {

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double learning_rate = 0.0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Runs the staged schedule over the patch set.
///
/// Each epoch takes `iterations_per_epoch` batches from successive shuffled
/// passes over the patches (a fresh pass whenever one runs out), drawn from a
/// generator seeded with `shuffle_seed`. Returns one record per epoch.
template <typename T>
std::vector<EpochRecord> train(CsNetModel<T>& model, const std::vector<Tensor<double>>& patches,
                               const TrainSchedule& schedule, std::uint64_t shuffle_seed,
                               const EpochCallback& on_epoch = {});

}  // namespace csnet
