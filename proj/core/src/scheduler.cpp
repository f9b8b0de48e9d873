#include "tridrop/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "tridrop/errors.hpp"

namespace tridrop {

PlateauScheduler::PlateauScheduler(Config config) : config_(config), lr_(config.initial_lr) {
    if (!(lr_ > 0.0) || !(config_.decay_factor > 1.0) || config_.patience < 1) {
        throw ConfigError("PlateauScheduler: need lr > 0, decay_factor > 1, patience >= 1");
    }
}

PlateauScheduler::Update PlateauScheduler::observe(double epoch_loss) {
    history_.push_back(epoch_loss);
    Update u{lr_, false, false};
    if (history_.size() < config_.patience + 1) {
        return u;
    }
    const std::size_t window_start = history_.size() - config_.patience;
    double best_before = history_[0];
    for (std::size_t i = 1; i < window_start; ++i) {
        best_before = std::min(best_before, history_[i]);
    }
    double best_in_window = history_[window_start];
    for (std::size_t i = window_start + 1; i < history_.size(); ++i) {
        best_in_window = std::min(best_in_window, history_[i]);
    }
    const bool plateau = best_in_window > best_before * (1.0 - config_.min_rel_improvement);
    if (!plateau) {
        return u;
    }
    if (decays_ >= config_.max_decays) {
        u.stop = true;
        return u;
    }
    lr_ /= config_.decay_factor;
    ++decays_;
    history_.clear();
    u.lr = lr_;
    u.decayed = true;
    return u;
}

StepScheduler::StepScheduler(double initial_lr, std::size_t period, double decay_factor)
    : initial_lr_(initial_lr), period_(period), decay_factor_(decay_factor) {
    if (!(initial_lr_ > 0.0) || period_ < 1 || !(decay_factor_ > 1.0)) {
        throw ConfigError("StepScheduler: need lr > 0, period >= 1, decay_factor > 1");
    }
}

double StepScheduler::lr_for_epoch(std::size_t epoch) const {
    return initial_lr_ / std::pow(decay_factor_, static_cast<double>(epoch / period_));
}

}  // namespace tridrop
