#pragma once

#include "tridrop/model.hpp"

namespace tridrop {

template <typename T>
struct PrunedPairT {
    DenseParamsT<T> small;        // first k columns of the layer's weights and bias
    ActivationKind activation;    // unchanged
    DenseParamsT<T> next_trimmed; // first k input rows of the following layer
};

// Extracts the width-k sub-layer: keep columns [0, k) of the layer's weights
// and bias, and rows [0, k) of the next layer's weights. The next layer's
// bias is untouched. Outputs of the pair match the masked-at-k original
// because masked positions contribute exact zeros downstream.
template <typename T>
PrunedPairT<T> prune_layer(const LayerT<T>& layer, const DenseParamsT<T>& next, std::size_t k) {
    if (k < 1 || k > layer.out_dim()) {
        throw RangeError("prune_layer: width " + std::to_string(k) + " out of range [1, " +
                         std::to_string(layer.out_dim()) + "]");
    }
    if (next.in_dim() != layer.out_dim()) {
        throw DimensionError("prune_layer: next layer expects " + std::to_string(next.in_dim()) +
                             " inputs, layer provides " + std::to_string(layer.out_dim()));
    }
    PrunedPairT<T> out;
    out.activation = layer.activation;
    out.small = DenseParamsT<T>(layer.in_dim(), k);
    for (std::size_t i = 0; i < layer.in_dim(); ++i) {
        const T* src = layer.dense.weights.row(i);
        T* dst = out.small.weights.row(i);
        for (std::size_t j = 0; j < k; ++j) {
            dst[j] = src[j];
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        out.small.bias[j] = layer.dense.bias[j];
    }
    out.next_trimmed = DenseParamsT<T>(k, next.out_dim());
    for (std::size_t i = 0; i < k; ++i) {
        const T* src = next.weights.row(i);
        T* dst = out.next_trimmed.weights.row(i);
        for (std::size_t j = 0; j < next.out_dim(); ++j) {
            dst[j] = src[j];
        }
    }
    out.next_trimmed.bias = next.bias;
    return out;
}

// Replaces every TriDrop layer with a plain dense layer of the chosen width
// and trims adjacent layers to match. `widths` has one entry per TriDrop
// layer in layer order; kFullWidth keeps a layer's full width. End-to-end
// outputs match the width-masked original.
Model prune_model(const Model& m, const std::vector<std::size_t>& widths);

}  // namespace tridrop
