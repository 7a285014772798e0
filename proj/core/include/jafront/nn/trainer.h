#ifndef JAFRONT_NN_TRAINER_H_
#define JAFRONT_NN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "jafront/error.h"
#include "jafront/nn/matrix.h"
#include "jafront/nn/rng.h"

namespace jafront::nn {

struct TrainSchedule {
  double learning_rate = 0.1;
  std::size_t batch_size = 32;
  std::size_t patience = 4;     // epochs without strict improvement
  double anneal_factor = 0.5;
  double min_learning_rate = 1e-4;
  std::size_t max_epochs = 0;   // 0 = until the learning rate runs out
  std::vector<std::uint64_t> seeds{1};
};

// Anneal-on-plateau: after `patience` consecutive epochs whose metric is not
// strictly better than the best so far, the rate is multiplied by
// `anneal_factor` and the count restarts. Training is over once the rate
// drops below `min_learning_rate`.
class PlateauScheduler {
 public:
  explicit PlateauScheduler(const TrainSchedule& schedule)
      : lr_(schedule.learning_rate),
        factor_(schedule.anneal_factor),
        min_lr_(schedule.min_learning_rate),
        patience_(schedule.patience) {}

  // Returns true when `metric` strictly improves on the best so far.
  bool step(double metric) {
    if (metric > best_) {
      best_ = metric;
      bad_epochs_ = 0;
      return true;
    }
    if (++bad_epochs_ >= patience_) {
      lr_ *= factor_;
      bad_epochs_ = 0;
    }
    return false;
  }

  double lr() const { return lr_; }
  double best() const { return best_; }
  bool finished() const { return lr_ < min_lr_; }

 private:
  double lr_;
  double factor_;
  double min_lr_;
  std::size_t patience_;
  std::size_t bad_epochs_ = 0;
  double best_ = -std::numeric_limits<double>::infinity();
};

struct EpochRecord {
  std::size_t epoch = 0;
  double learning_rate = 0.0;  // rate used during this epoch
  double train_loss = 0.0;     // mean per-example loss
  double metric = 0.0;
  bool improved = false;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  double best_metric = 0.0;
  std::size_t best_epoch = 0;
};

// Mini-batch SGD. `model` must provide params() -> std::vector<Param<T>*> and
// loss_and_grad(const Example&) -> double, which accumulates into the
// gradients. Each update uses the batch-mean gradient. Examples are
// reshuffled every epoch with a generator seeded by `seed`. An empty
// `validate` anneals on the epoch's mean training loss instead (lower is
// better). On return the model holds the parameters of its best epoch.
template <typename T, typename Model, typename Example>
TrainHistory train(Model& model, const std::vector<Example>& examples,
                   const std::function<double()>& validate,
                   const TrainSchedule& schedule, std::uint64_t seed) {
  if (examples.empty()) {
    throw Error(ErrorKind::kEmptySplit, "training split is empty");
  }
  if (schedule.learning_rate <= 0.0 || schedule.batch_size == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "learning rate must be > 0 and batch size >= 1");
  }
  Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
  PlateauScheduler scheduler(schedule);
  const std::vector<Param<T>*> params = model.params();
  std::vector<Matrix<T>> best_values;
  for (const Param<T>* p : params) best_values.push_back(p->value);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainHistory history;
  for (std::size_t epoch = 1; !scheduler.finished(); ++epoch) {
    if (schedule.max_epochs != 0 && epoch > schedule.max_epochs) break;
    const double lr = scheduler.lr();
    rng.shuffle(order);
    double total_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size();
         begin += schedule.batch_size) {
      const std::size_t end =
          std::min(order.size(), begin + schedule.batch_size);
      for (Param<T>* p : params) p->zero_grad();
      for (std::size_t i = begin; i < end; ++i) {
        total_loss += model.loss_and_grad(examples[order[i]]);
      }
      const T step = static_cast<T>(lr / static_cast<double>(end - begin));
      for (Param<T>* p : params) {
        auto& v = p->value.values();
        const auto& g = p->grad.values();
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= step * g[k];
      }
    }
    EpochRecord record;
    record.epoch = epoch;
    record.learning_rate = lr;
    record.train_loss = total_loss / static_cast<double>(examples.size());
    record.metric = validate ? validate() : -record.train_loss;
    record.improved = scheduler.step(record.metric);
    if (record.improved) {
      history.best_metric = record.metric;
      history.best_epoch = epoch;
      for (std::size_t k = 0; k < params.size(); ++k) {
        best_values[k] = params[k]->value;
      }
    }
    history.epochs.push_back(record);
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    params[k]->value = best_values[k];
  }
  return history;
}

}  // namespace jafront::nn

#endif  // JAFRONT_NN_TRAINER_H_
