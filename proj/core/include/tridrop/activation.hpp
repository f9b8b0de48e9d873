#pragma once

#include <cmath>
#include <string>

#include "tridrop/matrix.hpp"

namespace tridrop {

enum class ActivationKind { Identity, Relu, Sigmoid, Tanh };

std::string to_string(ActivationKind kind);
ActivationKind parse_activation(const std::string& name);

// Elementwise activation. Identity returns the input unchanged (bit for bit).
template <typename T>
MatrixT<T> activation_apply(ActivationKind kind, const MatrixT<T>& z) {
    if (kind == ActivationKind::Identity) {
        return z;
    }
    MatrixT<T> out(z.rows(), z.cols());
    const T* src = z.data();
    T* dst = out.data();
    const std::size_t n = z.size();
    switch (kind) {
        case ActivationKind::Relu:
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = src[i] > T{0} ? src[i] : T{0};
            }
            break;
        case ActivationKind::Sigmoid:
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = T{1} / (T{1} + std::exp(-src[i]));
            }
            break;
        case ActivationKind::Tanh:
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = std::tanh(src[i]);
            }
            break;
        case ActivationKind::Identity:
            break;
    }
    return out;
}

// grad_out ⊙ α'(z). The relu derivative at exactly 0 is taken as 0.
template <typename T>
MatrixT<T> activation_backward(ActivationKind kind, const MatrixT<T>& z,
                               const MatrixT<T>& grad_out) {
    if (!z.same_shape(grad_out)) {
        throw DimensionError("activation_backward: shapes differ: " + z.shape_str() + " vs " +
                             grad_out.shape_str());
    }
    if (kind == ActivationKind::Identity) {
        return grad_out;
    }
    MatrixT<T> out(z.rows(), z.cols());
    const T* zv = z.data();
    const T* gv = grad_out.data();
    T* dst = out.data();
    const std::size_t n = z.size();
    switch (kind) {
        case ActivationKind::Relu:
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = zv[i] > T{0} ? gv[i] : T{0};
            }
            break;
        case ActivationKind::Sigmoid:
            for (std::size_t i = 0; i < n; ++i) {
                const T s = T{1} / (T{1} + std::exp(-zv[i]));
                dst[i] = gv[i] * s * (T{1} - s);
            }
            break;
        case ActivationKind::Tanh:
            for (std::size_t i = 0; i < n; ++i) {
                const T t = std::tanh(zv[i]);
                dst[i] = gv[i] * (T{1} - t * t);
            }
            break;
        case ActivationKind::Identity:
            break;
    }
    return out;
}

}  // namespace tridrop
