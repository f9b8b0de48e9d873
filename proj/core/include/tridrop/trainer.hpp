#pragma once

#include <functional>
#include <ostream>

#include "tridrop/adam.hpp"
#include "tridrop/dataset.hpp"
#include "tridrop/scheduler.hpp"

namespace tridrop {

enum class LrSchedule { Constant, Plateau, Step };

struct TrainConfig {
    std::size_t batch_size = 1024;
    // Hard cap; Plateau runs normally stop earlier via the scheduler.
    std::size_t max_epochs = 200;
    double lr = 0.005;
    LrSchedule schedule = LrSchedule::Plateau;
    PlateauScheduler::Config plateau{};  // initial_lr is taken from `lr`
    std::size_t step_period = 80;
    double step_factor = 10.0;
    bool shuffle = true;
    bool drop_last = true;
    std::uint64_t seed = 1;
    AdamConfig adam{};
    std::ostream* log = nullptr;  // per-epoch "epoch loss lr" lines when set
};

struct TrainResult {
    std::size_t epochs_run = 0;
    double final_loss = 0.0;
    std::vector<double> epoch_losses;
    bool stopped_by_scheduler = false;
};

// Adam training loop over minibatches. Deterministic given the model's
// initial parameters and cfg.seed. Epoch loss is the mean of batch losses;
// a non-finite batch loss raises NumericError naming the epoch.
TrainResult train(Model& m, const Dataset& data, const TrainConfig& cfg);

}  // namespace tridrop
