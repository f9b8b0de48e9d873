#pragma once

#include <cstddef>
#include <vector>

namespace tridrop {

// Divides the learning rate by `decay_factor` when the best epoch loss in the
// trailing `patience`-epoch window fails to beat the best loss seen before
// that window by at least `min_rel_improvement` (relative). After
// `max_decays` decays, one further plateau sets the stop flag.
//
// Window bookkeeping: the loss history is cleared on every decay, so each
// plateau is judged against losses observed since the previous decay only. A
// plateau can first be detected patience+1 epochs after a reset (one epoch of
// pre-window history is required).
class PlateauScheduler {
public:
    struct Config {
        double initial_lr = 0.005;
        double decay_factor = 10.0;
        std::size_t patience = 15;
        double min_rel_improvement = 0.02;
        std::size_t max_decays = 5;
    };

    struct Update {
        double lr;
        bool decayed;
        bool stop;
    };

    explicit PlateauScheduler(Config config);

    // Feed one epoch's mean loss; returns the lr to use next and whether
    // training should stop.
    Update observe(double epoch_loss);

    double lr() const { return lr_; }
    std::size_t decays_applied() const { return decays_; }

private:
    Config config_;
    double lr_;
    std::size_t decays_ = 0;
    std::vector<double> history_;  // since last decay
};

// lr(epoch) = initial_lr / decay_factor^(epoch / period), integer division;
// epochs are 0-based.
class StepScheduler {
public:
    StepScheduler(double initial_lr, std::size_t period, double decay_factor = 10.0);

    double lr_for_epoch(std::size_t epoch) const;

private:
    double initial_lr_;
    std::size_t period_;
    double decay_factor_;
};

}  // namespace tridrop
