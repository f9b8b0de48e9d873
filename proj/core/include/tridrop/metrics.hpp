#pragma once

#include "tridrop/dataset.hpp"
#include "tridrop/model.hpp"

namespace tridrop {

// Mean per-element binary cross-entropy of eval-mode predictions against the
// dataset targets (per-pixel for image data). Accumulated in double.
double eval_mean_bce(const Model& m, const Dataset& data, std::size_t batch_size = 1024);

// Mean per-element squared error.
double eval_mean_mse(const Model& m, const Dataset& data, std::size_t batch_size = 1024);

// Fraction of rows whose argmax prediction matches the one-hot target.
double eval_accuracy(const Model& m, const Dataset& data, std::size_t batch_size = 1024);

// Dispatch on the model's loss kind: bce -> eval_mean_bce, softmax_ce ->
// eval_accuracy, mse -> eval_mean_mse.
double eval_metric(const Model& m, const Dataset& data, std::size_t batch_size = 1024);

// Name of the metric eval_metric would compute ("bce", "accuracy", "mse").
std::string eval_metric_name(const Model& m);

}  // namespace tridrop
