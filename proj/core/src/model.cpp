#include "tridrop/model.hpp"

#include <cmath>

#include "tridrop/errors.hpp"

namespace tridrop {

std::string to_string(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Identity: return "identity";
        case ActivationKind::Relu: return "relu";
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::Tanh: return "tanh";
    }
    return "?";
}

ActivationKind parse_activation(const std::string& name) {
    if (name == "identity" || name == "linear") return ActivationKind::Identity;
    if (name == "relu") return ActivationKind::Relu;
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    if (name == "tanh") return ActivationKind::Tanh;
    throw ConfigError("unknown activation: " + name);
}

std::string to_string(LossKind kind) {
    switch (kind) {
        case LossKind::BinaryCrossEntropy: return "bce";
        case LossKind::MeanSquaredError: return "mse";
        case LossKind::SoftmaxCrossEntropy: return "softmax_ce";
    }
    return "?";
}

LossKind parse_loss(const std::string& name) {
    if (name == "bce") return LossKind::BinaryCrossEntropy;
    if (name == "mse") return LossKind::MeanSquaredError;
    if (name == "softmax_ce") return LossKind::SoftmaxCrossEntropy;
    throw ConfigError("unknown loss: " + name);
}

std::string to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::Dense: return "dense";
        case LayerKind::TriDrop: return "tridrop";
    }
    return "?";
}

LayerKind parse_layer_kind(const std::string& name) {
    if (name == "dense") return LayerKind::Dense;
    if (name == "tridrop") return LayerKind::TriDrop;
    throw ConfigError("unknown layer kind: " + name);
}

void ModelSpec::validate() const {
    if (layers.empty()) {
        throw ConfigError("model spec has no layers");
    }
    if (input_dim < 1) {
        throw ConfigError("model spec input_dim must be >= 1");
    }
    if (layers.front().in_dim != input_dim) {
        throw ConfigError("first layer in_dim " + std::to_string(layers.front().in_dim) +
                          " does not match input_dim " + std::to_string(input_dim));
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        if (l.in_dim < 1 || l.out_dim < 1) {
            throw ConfigError("layer " + std::to_string(i) + " has zero dimension");
        }
        if (i + 1 < layers.size() && l.out_dim != layers[i + 1].in_dim) {
            throw ConfigError("layer " + std::to_string(i) + " out_dim " +
                              std::to_string(l.out_dim) + " does not chain into layer " +
                              std::to_string(i + 1) + " in_dim " +
                              std::to_string(layers[i + 1].in_dim));
        }
    }
}

bool operator==(const LayerSpec& a, const LayerSpec& b) {
    return a.kind == b.kind && a.in_dim == b.in_dim && a.out_dim == b.out_dim &&
           a.activation == b.activation;
}

bool operator==(const ModelSpec& a, const ModelSpec& b) {
    return a.input_dim == b.input_dim && a.loss == b.loss && a.layers == b.layers &&
           a.meta.name == b.meta.name && a.meta.seed == b.meta.seed &&
           a.meta.provenance == b.meta.provenance;
}

ModelSpec Model::spec() const {
    ModelSpec s;
    s.input_dim = net.input_dim();
    s.loss = loss;
    s.meta = meta;
    for (const auto& l : net.layers) {
        s.layers.push_back({l.kind, l.in_dim(), l.out_dim(), l.activation});
    }
    return s;
}

DenseParams init_dense(std::size_t in_dim, std::size_t out_dim, ActivationKind activation,
                       Rng& rng) {
    DenseParams p(in_dim, out_dim);
    const double bound = activation == ActivationKind::Relu
                             ? std::sqrt(6.0 / static_cast<double>(in_dim))
                             : std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (float& w : p.weights.flat()) {
        w = rng.uniform_float(static_cast<float>(-bound), static_cast<float>(bound));
    }
    return p;
}

Model build_model(const ModelSpec& spec, Rng& rng) {
    spec.validate();
    Model m;
    m.loss = spec.loss;
    m.meta = spec.meta;
    for (const auto& ls : spec.layers) {
        Layer layer;
        layer.kind = ls.kind;
        layer.activation = ls.activation;
        layer.dense = init_dense(ls.in_dim, ls.out_dim, ls.activation, rng);
        m.net.layers.push_back(std::move(layer));
    }
    return m;
}

void set_td_eval_width(Model& m, std::size_t width) {
    for (auto& l : m.net.layers) {
        if (l.kind == LayerKind::TriDrop) {
            if (width != kFullWidth && width > l.out_dim()) {
                throw RangeError("eval width " + std::to_string(width) + " exceeds layer width " +
                                 std::to_string(l.out_dim()));
            }
            l.eval_width = width;
        }
    }
}

void set_layer_eval_width(Model& m, std::size_t layer_index, std::size_t width) {
    if (layer_index >= m.net.layers.size()) {
        throw RangeError("layer index " + std::to_string(layer_index) + " out of range");
    }
    auto& l = m.net.layers[layer_index];
    if (width != kFullWidth && width > l.out_dim()) {
        throw RangeError("eval width " + std::to_string(width) + " exceeds layer width " +
                         std::to_string(l.out_dim()));
    }
    l.eval_width = width;
}

std::vector<std::size_t> tridrop_layer_indices(const Model& m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.net.layers.size(); ++i) {
        if (m.net.layers[i].kind == LayerKind::TriDrop) {
            idx.push_back(i);
        }
    }
    return idx;
}

NetT<double> widen(const NetT<float>& net) {
    NetT<double> d;
    for (const auto& l : net.layers) {
        LayerT<double> dl;
        dl.kind = l.kind;
        dl.activation = l.activation;
        dl.mask_mode = l.mask_mode;
        dl.eval_width = l.eval_width;
        dl.dense.weights = widen(l.dense.weights);
        dl.dense.bias.assign(l.dense.bias.begin(), l.dense.bias.end());
        d.layers.push_back(std::move(dl));
    }
    return d;
}

}  // namespace tridrop
