#pragma once

#include <vector>

#include "tridrop/activation.hpp"
#include "tridrop/matrix.hpp"
#include "tridrop/rng.hpp"

namespace tridrop {

template <typename T>
struct DenseParamsT {
    MatrixT<T> weights;   // (in_dim, out_dim)
    std::vector<T> bias;  // out_dim

    DenseParamsT() = default;
    DenseParamsT(std::size_t in_dim, std::size_t out_dim)
        : weights(in_dim, out_dim), bias(out_dim, T{0}) {}

    std::size_t in_dim() const { return weights.rows(); }
    std::size_t out_dim() const { return weights.cols(); }
};

using DenseParams = DenseParamsT<float>;
using DenseParamsD = DenseParamsT<double>;

template <typename T>
struct DenseGradsT {
    MatrixT<T> input;    // dL/dx
    MatrixT<T> weights;  // dL/dW
    std::vector<T> bias; // dL/db
};

// x*W + b with the bias broadcast over rows.
template <typename T>
MatrixT<T> dense_forward(const DenseParamsT<T>& p, const MatrixT<T>& x) {
    if (x.cols() != p.in_dim()) {
        throw DimensionError("dense_forward: input has " + std::to_string(x.cols()) +
                             " columns, layer expects " + std::to_string(p.in_dim()));
    }
    MatrixT<T> z(x.rows(), p.out_dim());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        T* zrow = z.row(i);
        for (std::size_t j = 0; j < z.cols(); ++j) {
            zrow[j] = p.bias[j];
        }
    }
    matmul_acc(z, x, p.weights);
    return z;
}

// grad_w = x^T * grad_out, grad_b = column sums of grad_out,
// grad_in = grad_out * W^T.
template <typename T>
DenseGradsT<T> dense_backward(const DenseParamsT<T>& p, const MatrixT<T>& x,
                              const MatrixT<T>& grad_out) {
    if (x.cols() != p.in_dim() || grad_out.cols() != p.out_dim() || x.rows() != grad_out.rows()) {
        throw DimensionError("dense_backward: inconsistent shapes x=" + x.shape_str() +
                             " grad_out=" + grad_out.shape_str() + " W=" +
                             p.weights.shape_str());
    }
    DenseGradsT<T> g;
    g.weights = matmul_tn(x, grad_out);
    g.bias.assign(p.out_dim(), T{0});
    for (std::size_t i = 0; i < grad_out.rows(); ++i) {
        const T* grow = grad_out.row(i);
        for (std::size_t j = 0; j < grad_out.cols(); ++j) {
            g.bias[j] += grow[j];
        }
    }
    g.input = matmul_nt(grad_out, p.weights);
    return g;
}

// Seeded uniform init: He-style bound sqrt(6/in) for relu layers, Xavier
// bound sqrt(6/(in+out)) for everything else. Biases start at zero.
DenseParams init_dense(std::size_t in_dim, std::size_t out_dim, ActivationKind activation,
                       Rng& rng);

}  // namespace tridrop
