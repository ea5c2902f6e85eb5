#include "csnet/model/train.hpp"

#include <deque>

#include "csnet/data/pipeline.hpp"

namespace csnet {

template <typename T>
std::vector<EpochRecord> train(CsNetModel<T>& model, const std::vector<Tensor<double>>& patches,
                               const TrainSchedule& schedule, std::uint64_t shuffle_seed,
                               const EpochCallback& on_epoch) {
  schedule.validate();
  if (patches.empty()) throw ConfigError("training set is empty");
  if (schedule.batch_size > patches.size()) {
    throw ConfigError("batch size " + std::to_string(schedule.batch_size) + " exceeds the " +
                      std::to_string(patches.size()) + " available patches");
  }

  Rng rng(shuffle_seed);
  CsNetOptimizer<T> optimizer(model, AdamHyper{});
  std::vector<EpochRecord> history;
  for (std::size_t epoch = 1; epoch <= schedule.epochs; ++epoch) {
    const double rate = schedule.rate_for_epoch(epoch);
    optimizer.set_learning_rate(rate);
    std::deque<std::vector<std::size_t>> pending;
    double total = 0.0;
    for (std::size_t it = 0; it < schedule.iterations_per_epoch; ++it) {
      if (pending.empty()) {
        auto pass = shuffled_batches(patches.size(), schedule.batch_size, rng);
        pending.assign(pass.begin(), pass.end());
      }
      const Tensor<T> batch = gather_batch<T>(patches, pending.front());
      pending.pop_front();
      total += train_step(model, batch, optimizer);
    }
    history.push_back({epoch, total / static_cast<double>(schedule.iterations_per_epoch), rate});
    if (on_epoch) on_epoch(history.back());
  }
  return history;
}

template std::vector<EpochRecord> train(CsNetModel<float>&, const std::vector<Tensor<double>>&,
                                        const TrainSchedule&, std::uint64_t, const EpochCallback&);
template std::vector<EpochRecord> train(CsNetModel<double>&, const std::vector<Tensor<double>>&,
                                        const TrainSchedule&, std::uint64_t, const EpochCallback&);

}  // namespace csnet
