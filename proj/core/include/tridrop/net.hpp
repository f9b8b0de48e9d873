#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tridrop/dense.hpp"
#include "tridrop/mask.hpp"

namespace tridrop {

enum class LayerKind { Dense, TriDrop };

std::string to_string(LayerKind kind);
LayerKind parse_layer_kind(const std::string& name);

// eval_width sentinel: use the full layer width.
inline constexpr std::size_t kFullWidth = 0;

template <typename T>
struct LayerT {
    LayerKind kind = LayerKind::Dense;
    DenseParamsT<T> dense;
    ActivationKind activation = ActivationKind::Identity;
    // TriDrop only: how training masks are drawn.
    MaskMode mask_mode = MaskMode::DeterministicPrefix;
    // Evaluation-time width selection. kFullWidth leaves the layer untouched.
    // Honored for Dense layers too, which is how ablated baselines of plain
    // models are measured.
    std::size_t eval_width = kFullWidth;

    std::size_t in_dim() const { return dense.in_dim(); }
    std::size_t out_dim() const { return dense.out_dim(); }
};

using Layer = LayerT<float>;

template <typename T>
struct LayerCacheT {
    MatrixT<T> input;
    MatrixT<T> pre_activation;
    std::optional<TriangularMask> mask;
};

// y = mask ⊙ α(x*W + b). No rescaling by any keep probability: downstream
// layers must cope with every width as-is. The mask multiplies the activated
// value, so masked positions emit literal zeros even when α(0) != 0.
template <typename T>
MatrixT<T> tridrop_forward_train(const LayerT<T>& layer, const MatrixT<T>& x,
                                 const TriangularMask& mask, LayerCacheT<T>* cache = nullptr) {
    if (x.rows() != mask.batch()) {
        throw DimensionError("tridrop_forward_train: batch " + std::to_string(x.rows()) +
                             " vs mask batch " + std::to_string(mask.batch()));
    }
    if (layer.out_dim() != mask.width()) {
        throw DimensionError("tridrop_forward_train: layer width " +
                             std::to_string(layer.out_dim()) + " vs mask width " +
                             std::to_string(mask.width()));
    }
    MatrixT<T> z = dense_forward(layer.dense, x);
    MatrixT<T> y = activation_apply(layer.activation, z);
    apply_mask_inplace(y, mask);
    if (cache != nullptr) {
        cache->input = x;
        cache->pre_activation = std::move(z);
        cache->mask = mask;
    }
    return y;
}

// Gradient flows only through unmasked entries: the upstream gradient is
// masked before the activation and dense backward steps.
template <typename T>
DenseGradsT<T> tridrop_backward(const LayerT<T>& layer, const LayerCacheT<T>& cache,
                                const MatrixT<T>& grad_out) {
    if (!cache.mask.has_value()) {
        throw InternalError("tridrop_backward: cache has no mask");
    }
    MatrixT<T> masked_grad = grad_out;
    apply_mask_inplace(masked_grad, *cache.mask);
    MatrixT<T> grad_z = activation_backward(layer.activation, cache.pre_activation, masked_grad);
    return dense_backward(layer.dense, cache.input, grad_z);
}

// α(x*W + b) with columns >= width zeroed; width == out_dim reproduces the
// plain layer exactly.
template <typename T>
MatrixT<T> tridrop_forward_eval(const LayerT<T>& layer, const MatrixT<T>& x, std::size_t width) {
    if (width < 1 || width > layer.out_dim()) {
        throw RangeError("tridrop_forward_eval: width " + std::to_string(width) +
                         " out of range [1, " + std::to_string(layer.out_dim()) + "]");
    }
    MatrixT<T> y = activation_apply(layer.activation, dense_forward(layer.dense, x));
    if (width < layer.out_dim()) {
        apply_eval_width_inplace(y, width);
    }
    return y;
}

template <typename T>
struct NetGradsT {
    std::vector<DenseGradsT<T>> layers;  // aligned with NetT::layers
};

// Plain sequential network over dense and triangular-dropout layers.
template <typename T>
struct NetT {
    std::vector<LayerT<T>> layers;

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
    std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out_dim(); }

    std::size_t tridrop_layer_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) {
            n += l.kind == LayerKind::TriDrop ? 1 : 0;
        }
        return n;
    }

    // One training mask per TriDrop layer, in layer order. Deterministic
    // masks ignore `rng`.
    std::vector<TriangularMask> make_train_masks(std::size_t batch, Rng* rng = nullptr) const {
        std::vector<TriangularMask> masks;
        for (const auto& l : layers) {
            if (l.kind == LayerKind::TriDrop) {
                masks.push_back(build_mask(batch, l.out_dim(), l.mask_mode, rng));
            }
        }
        return masks;
    }

    // Training-mode forward. `masks` must contain one entry per TriDrop layer
    // (see make_train_masks); keeping them external lets the gradient checker
    // hold a mask fixed across finite-difference probes.
    MatrixT<T> forward_train(const MatrixT<T>& x, const std::vector<TriangularMask>& masks,
                             std::vector<LayerCacheT<T>>* caches = nullptr) const {
        if (caches != nullptr) {
            caches->assign(layers.size(), LayerCacheT<T>{});
        }
        MatrixT<T> a = x;
        std::size_t mask_idx = 0;
        for (std::size_t li = 0; li < layers.size(); ++li) {
            const auto& layer = layers[li];
            LayerCacheT<T>* cache = caches ? &(*caches)[li] : nullptr;
            if (layer.kind == LayerKind::TriDrop) {
                if (mask_idx >= masks.size()) {
                    throw ConfigError("forward_train: not enough masks for TriDrop layers");
                }
                a = tridrop_forward_train(layer, a, masks[mask_idx++], cache);
            } else {
                MatrixT<T> z = dense_forward(layer.dense, a);
                MatrixT<T> y = activation_apply(layer.activation, z);
                if (cache != nullptr) {
                    cache->input = std::move(a);
                    cache->pre_activation = std::move(z);
                }
                a = std::move(y);
            }
        }
        if (mask_idx != masks.size()) {
            throw ConfigError("forward_train: " + std::to_string(masks.size()) +
                              " masks provided for " + std::to_string(mask_idx) +
                              " TriDrop layers");
        }
        return a;
    }

    // Evaluation-mode forward honoring per-layer eval_width.
    MatrixT<T> forward_eval(const MatrixT<T>& x) const {
        MatrixT<T> a = x;
        for (const auto& layer : layers) {
            MatrixT<T> y = activation_apply(layer.activation, dense_forward(layer.dense, a));
            if (layer.eval_width != kFullWidth && layer.eval_width < layer.out_dim()) {
                apply_eval_width_inplace(y, layer.eval_width);
            } else if (layer.eval_width > layer.out_dim()) {
                throw RangeError("forward_eval: eval width " + std::to_string(layer.eval_width) +
                                 " exceeds layer width " + std::to_string(layer.out_dim()));
            }
            a = std::move(y);
        }
        return a;
    }

    NetGradsT<T> backward(const std::vector<LayerCacheT<T>>& caches,
                          const MatrixT<T>& grad_output) const {
        if (caches.size() != layers.size()) {
            throw InternalError("backward: cache count does not match layer count");
        }
        NetGradsT<T> grads;
        grads.layers.resize(layers.size());
        MatrixT<T> upstream = grad_output;
        for (std::size_t idx = layers.size(); idx-- > 0;) {
            const auto& layer = layers[idx];
            const auto& cache = caches[idx];
            DenseGradsT<T> g;
            if (layer.kind == LayerKind::TriDrop) {
                g = tridrop_backward(layer, cache, upstream);
            } else {
                MatrixT<T> grad_z =
                    activation_backward(layer.activation, cache.pre_activation, upstream);
                g = dense_backward(layer.dense, cache.input, grad_z);
            }
            upstream = std::move(g.input);
            grads.layers[idx] = std::move(g);
        }
        return grads;
    }
};

using Net = NetT<float>;

// Double-precision copy used by the gradient checker.
NetT<double> widen(const NetT<float>& net);

}  // namespace tridrop
