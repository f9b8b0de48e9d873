#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tridrop/model.hpp"

namespace tridrop {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Bias-corrected Adam state for one parameter tensor.
class AdamState {
public:
    AdamState() = default;
    AdamState(std::size_t size, AdamConfig config = {});

    // In-place update; increments the step counter.
    void step(std::span<float> params, std::span<const float> grads, double lr);

    std::size_t steps() const { return steps_; }

private:
    AdamConfig config_;
    std::vector<float> m_, v_;
    std::size_t steps_ = 0;
};

// One AdamState per parameter tensor of a model (weights then bias, per layer).
class ModelAdam {
public:
    explicit ModelAdam(const Model& m, AdamConfig config = {});

    void step(Model& m, const NetGradsT<float>& grads, double lr);

private:
    std::vector<AdamState> states_;
};

}  // namespace tridrop
