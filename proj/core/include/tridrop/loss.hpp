#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "tridrop/matrix.hpp"

namespace tridrop {

enum class LossKind { BinaryCrossEntropy, MeanSquaredError, SoftmaxCrossEntropy };

std::string to_string(LossKind kind);
LossKind parse_loss(const std::string& name);

template <typename T>
struct LossResult {
    double value = 0.0;
    MatrixT<T> grad;  // d loss / d pred (or d logits for softmax cross-entropy)
};

// BCE predictions are clamped into [eps, 1-eps] before the log.
inline constexpr double kBceClamp = 1e-7;

// Mean loss and its gradient.
//   BinaryCrossEntropy / MeanSquaredError: mean over every entry, so values
//   are per-element (per-pixel for image batches) and comparable across
//   batch sizes and resolutions.
//   SoftmaxCrossEntropy: takes logits and one-hot targets; per-sample
//   cross-entropy summed over classes, averaged over the batch.
template <typename T>
LossResult<T> loss_and_grad(LossKind kind, const MatrixT<T>& pred, const MatrixT<T>& target) {
    if (!pred.same_shape(target)) {
        throw DimensionError("loss_and_grad: shapes differ: " + pred.shape_str() + " vs " +
                             target.shape_str());
    }
    LossResult<T> result;
    result.grad = MatrixT<T>(pred.rows(), pred.cols());
    const std::size_t n = pred.size();
    const T* p = pred.data();
    const T* t = target.data();
    T* g = result.grad.data();
    double loss = 0.0;

    switch (kind) {
        case LossKind::MeanSquaredError: {
            const double scale = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double d = static_cast<double>(p[i]) - static_cast<double>(t[i]);
                loss += d * d;
                g[i] = static_cast<T>(2.0 * d * scale);
            }
            loss *= scale;
            break;
        }
        case LossKind::BinaryCrossEntropy: {
            const double scale = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double pc = std::clamp(static_cast<double>(p[i]), kBceClamp, 1.0 - kBceClamp);
                const double tv = static_cast<double>(t[i]);
                loss -= tv * std::log(pc) + (1.0 - tv) * std::log(1.0 - pc);
                g[i] = static_cast<T>((pc - tv) / (pc * (1.0 - pc)) * scale);
            }
            loss *= scale;
            break;
        }
        case LossKind::SoftmaxCrossEntropy: {
            const std::size_t rows = pred.rows(), cols = pred.cols();
            const double scale = 1.0 / static_cast<double>(rows);
            for (std::size_t i = 0; i < rows; ++i) {
                const T* prow = pred.row(i);
                const T* trow = target.row(i);
                T* grow = result.grad.row(i);
                T zmax = prow[0];
                for (std::size_t j = 1; j < cols; ++j) {
                    zmax = std::max(zmax, prow[j]);
                }
                double denom = 0.0;
                for (std::size_t j = 0; j < cols; ++j) {
                    denom += std::exp(static_cast<double>(prow[j] - zmax));
                }
                const double log_denom = std::log(denom);
                for (std::size_t j = 0; j < cols; ++j) {
                    const double log_soft = static_cast<double>(prow[j] - zmax) - log_denom;
                    loss -= static_cast<double>(trow[j]) * log_soft;
                    grow[j] =
                        static_cast<T>((std::exp(log_soft) - static_cast<double>(trow[j])) * scale);
                }
            }
            loss *= scale;
            break;
        }
    }
    result.value = loss;
    return result;
}

}  // namespace tridrop
