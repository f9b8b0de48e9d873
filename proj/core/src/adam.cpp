#include "tridrop/adam.hpp"

#include <cmath>

#include "tridrop/errors.hpp"

namespace tridrop {

AdamState::AdamState(std::size_t size, AdamConfig config)
    : config_(config), m_(size, 0.0f), v_(size, 0.0f) {}

void AdamState::step(std::span<float> params, std::span<const float> grads, double lr) {
    if (params.size() != m_.size() || grads.size() != m_.size()) {
        throw DimensionError("adam_step: parameter/gradient size mismatch");
    }
    if (!(lr > 0.0)) {
        throw RangeError("adam_step: learning rate must be positive");
    }
    ++steps_;
    const double b1 = config_.beta1, b2 = config_.beta2;
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = static_cast<double>(grads[i]);
        const double m = b1 * static_cast<double>(m_[i]) + (1.0 - b1) * g;
        const double v = b2 * static_cast<double>(v_[i]) + (1.0 - b2) * g * g;
        m_[i] = static_cast<float>(m);
        v_[i] = static_cast<float>(v);
        const double m_hat = m / bc1;
        const double v_hat = v / bc2;
        params[i] = static_cast<float>(static_cast<double>(params[i]) -
                                       lr * m_hat / (std::sqrt(v_hat) + config_.eps));
    }
}

ModelAdam::ModelAdam(const Model& m, AdamConfig config) {
    for (const auto& l : m.net.layers) {
        states_.emplace_back(l.dense.weights.size(), config);
        states_.emplace_back(l.dense.bias.size(), config);
    }
}

void ModelAdam::step(Model& m, const NetGradsT<float>& grads, double lr) {
    if (grads.layers.size() != m.net.layers.size() ||
        states_.size() != 2 * m.net.layers.size()) {
        throw DimensionError("ModelAdam: gradient/layer count mismatch");
    }
    for (std::size_t li = 0; li < m.net.layers.size(); ++li) {
        auto& layer = m.net.layers[li];
        const auto& g = grads.layers[li];
        states_[2 * li].step(layer.dense.weights.flat(), g.weights.flat(), lr);
        states_[2 * li + 1].step(layer.dense.bias, g.bias, lr);
    }
}

}  // namespace tridrop
