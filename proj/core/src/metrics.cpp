#include "tridrop/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tridrop/errors.hpp"
#include "tridrop/loss.hpp"

namespace tridrop {

namespace {

Matrix slice_rows(const Matrix& m, std::size_t begin, std::size_t end) {
    Matrix out(end - begin, m.cols());
    std::copy(m.row(begin), m.row(begin) + (end - begin) * m.cols(), out.data());
    return out;
}

template <typename Fn>
double batched_mean(const Model& m, const Dataset& data, std::size_t batch_size, Fn per_batch) {
    data.validate();
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t begin = 0; begin < data.size(); begin += batch_size) {
        const std::size_t end = std::min(begin + batch_size, data.size());
        const Matrix pred = m.forward_eval(slice_rows(data.inputs, begin, end));
        const Matrix target = slice_rows(data.targets, begin, end);
        total += per_batch(pred, target);
        count += end - begin;
    }
    return total / static_cast<double>(count);
}

}  // namespace

double eval_mean_bce(const Model& m, const Dataset& data, std::size_t batch_size) {
    return batched_mean(m, data, batch_size, [](const Matrix& pred, const Matrix& target) {
        double sum = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const double p =
                std::clamp(static_cast<double>(pred.data()[i]), kBceClamp, 1.0 - kBceClamp);
            const double t = static_cast<double>(target.data()[i]);
            sum -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
        }
        return sum / static_cast<double>(pred.cols());
    });
}

double eval_mean_mse(const Model& m, const Dataset& data, std::size_t batch_size) {
    return batched_mean(m, data, batch_size, [](const Matrix& pred, const Matrix& target) {
        double sum = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const double d = static_cast<double>(pred.data()[i]) -
                             static_cast<double>(target.data()[i]);
            sum += d * d;
        }
        return sum / static_cast<double>(pred.cols());
    });
}

double eval_accuracy(const Model& m, const Dataset& data, std::size_t batch_size) {
    return batched_mean(m, data, batch_size, [](const Matrix& pred, const Matrix& target) {
        double correct = 0.0;
        for (std::size_t i = 0; i < pred.rows(); ++i) {
            const float* prow = pred.row(i);
            const float* trow = target.row(i);
            std::size_t pbest = 0, tbest = 0;
            for (std::size_t j = 1; j < pred.cols(); ++j) {
                if (prow[j] > prow[pbest]) pbest = j;
                if (trow[j] > trow[tbest]) tbest = j;
            }
            correct += pbest == tbest ? 1.0 : 0.0;
        }
        return correct;
    });
}

double eval_metric(const Model& m, const Dataset& data, std::size_t batch_size) {
    switch (m.loss) {
        case LossKind::BinaryCrossEntropy: return eval_mean_bce(m, data, batch_size);
        case LossKind::SoftmaxCrossEntropy: return eval_accuracy(m, data, batch_size);
        case LossKind::MeanSquaredError: return eval_mean_mse(m, data, batch_size);
    }
    throw ConfigError("eval_metric: unknown loss kind");
}

std::string eval_metric_name(const Model& m) {
    switch (m.loss) {
        case LossKind::BinaryCrossEntropy: return "bce";
        case LossKind::SoftmaxCrossEntropy: return "accuracy";
        case LossKind::MeanSquaredError: return "mse";
    }
    return "?";
}

}  // namespace tridrop
