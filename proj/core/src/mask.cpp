#include "tridrop/mask.hpp"

#include <string>

#include "tridrop/errors.hpp"

namespace tridrop {

std::size_t effective_width(std::size_t i, std::size_t batch, std::size_t width) {
    if (batch < 1 || width < 1) {
        throw RangeError("effective_width: batch and width must be >= 1");
    }
    if (i >= batch) {
        throw RangeError("effective_width: row " + std::to_string(i) + " out of range for batch " +
                         std::to_string(batch));
    }
    return ((i + 1) * width + batch - 1) / batch;
}

TriangularMask::TriangularMask(std::size_t batch, std::size_t width,
                               std::vector<std::size_t> prefix_widths)
    : batch_(batch), width_(width), widths_(std::move(prefix_widths)) {
    if (widths_.size() != batch_) {
        throw DimensionError("TriangularMask: " + std::to_string(widths_.size()) +
                             " widths for batch " + std::to_string(batch_));
    }
    for (std::size_t w : widths_) {
        if (w < 1 || w > width_) {
            throw RangeError("TriangularMask: prefix width " + std::to_string(w) +
                             " outside [1, " + std::to_string(width_) + "]");
        }
    }
}

std::size_t TriangularMask::width_at(std::size_t i) const {
    if (i >= batch_) {
        throw RangeError("TriangularMask: row " + std::to_string(i) + " out of range");
    }
    return widths_[i];
}

Matrix TriangularMask::to_matrix() const {
    Matrix m(batch_, width_);
    for (std::size_t i = 0; i < batch_; ++i) {
        float* row = m.row(i);
        for (std::size_t j = 0; j < widths_[i]; ++j) {
            row[j] = 1.0f;
        }
    }
    return m;
}

TriangularMask build_mask(std::size_t batch, std::size_t width, MaskMode mode, Rng* rng) {
    if (batch < 1 || width < 1) {
        throw RangeError("build_mask: batch and width must be >= 1");
    }
    std::vector<std::size_t> widths(batch);
    switch (mode) {
        case MaskMode::DeterministicPrefix:
            for (std::size_t i = 0; i < batch; ++i) {
                widths[i] = effective_width(i, batch, width);
            }
            break;
        case MaskMode::RandomPrefix:
            if (rng == nullptr) {
                throw ConfigError("build_mask: RandomPrefix requires an Rng");
            }
            for (std::size_t i = 0; i < batch; ++i) {
                widths[i] = 1 + static_cast<std::size_t>(rng->uniform_below(width));
            }
            break;
    }
    return TriangularMask(batch, width, std::move(widths));
}

Matrix standard_dropout_mask(std::size_t batch, std::size_t width, double keep_prob, Rng& rng) {
    if (keep_prob < 0.0 || keep_prob > 1.0) {
        throw RangeError("standard_dropout_mask: keep probability must be in [0, 1]");
    }
    Matrix m(batch, width);
    for (float& v : m.flat()) {
        v = rng.bernoulli(keep_prob) ? 1.0f : 0.0f;
    }
    return m;
}

}  // namespace tridrop
