#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tridrop/loss.hpp"
#include "tridrop/net.hpp"

namespace tridrop {

struct LayerSpec {
    LayerKind kind = LayerKind::Dense;
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    ActivationKind activation = ActivationKind::Identity;
};

struct ModelMeta {
    std::string name;
    std::uint64_t seed = 0;
    std::string provenance;  // free-form: command, config hash, date of training source
};

struct ModelSpec {
    std::size_t input_dim = 0;
    LossKind loss = LossKind::MeanSquaredError;
    std::vector<LayerSpec> layers;
    ModelMeta meta;

    // Throws ConfigError unless there is at least one layer, every dim is
    // >= 1, and adjacent dims chain (layer[t].out_dim == layer[t+1].in_dim).
    void validate() const;
};

bool operator==(const LayerSpec& a, const LayerSpec& b);
bool operator==(const ModelSpec& a, const ModelSpec& b);  // meta included

// A spec plus its parameters.
struct Model {
    Net net;
    LossKind loss = LossKind::MeanSquaredError;
    ModelMeta meta;

    ModelSpec spec() const;

    std::size_t input_dim() const { return net.input_dim(); }
    std::size_t output_dim() const { return net.output_dim(); }

    Matrix forward_eval(const Matrix& x) const { return net.forward_eval(x); }
};

// Builds a model with seeded weight init (He/Xavier uniform per activation).
Model build_model(const ModelSpec& spec, Rng& rng);

// Sets eval_width on every TriDrop layer (kFullWidth restores full width).
void set_td_eval_width(Model& m, std::size_t width);

// Sets eval_width on one layer by index, regardless of kind; used to ablate
// plain baseline models.
void set_layer_eval_width(Model& m, std::size_t layer_index, std::size_t width);

// Indices of TriDrop layers, in order.
std::vector<std::size_t> tridrop_layer_indices(const Model& m);

}  // namespace tridrop
