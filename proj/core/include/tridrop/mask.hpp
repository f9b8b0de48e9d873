#pragma once

#include <cstddef>
#include <vector>

#include "tridrop/matrix.hpp"
#include "tridrop/rng.hpp"

namespace tridrop {

enum class MaskMode { DeterministicPrefix, RandomPrefix };

// Number of leading unmasked units for batch row i of a width-n layer:
// ceil((i+1) * n / B). One formula covers all three batch regimes:
//   B == n: w(i) = i+1, the unit-diagonal lower-triangular mask;
//   B >  n: each width value repeats B/n consecutive rows;
//   B <  n: each row's prefix grows by a block of n/B columns.
std::size_t effective_width(std::size_t i, std::size_t batch, std::size_t width);

// Batch mask in which row i keeps columns [0, w(i)) and zeroes the rest.
// Stored as per-row prefix lengths; w(i) is always in [1, width].
class TriangularMask {
public:
    TriangularMask(std::size_t batch, std::size_t width, std::vector<std::size_t> prefix_widths);

    std::size_t batch() const { return batch_; }
    std::size_t width() const { return width_; }
    std::size_t width_at(std::size_t i) const;
    const std::vector<std::size_t>& widths() const { return widths_; }

    // Materialized 0/1 matrix, shape (batch, width).
    Matrix to_matrix() const;

private:
    std::size_t batch_, width_;
    std::vector<std::size_t> widths_;
};

// DeterministicPrefix fills widths from effective_width; RandomPrefix draws
// each row's width uniformly from {1..width} (rng required).
TriangularMask build_mask(std::size_t batch, std::size_t width, MaskMode mode,
                          Rng* rng = nullptr);

// Baseline comparator: iid Bernoulli mask where an entry is 1 (kept) with
// probability keep_prob.
Matrix standard_dropout_mask(std::size_t batch, std::size_t width, double keep_prob, Rng& rng);

// Zeroes y(i, j) for j >= w(i). Masked positions become literal +0.
template <typename T>
void apply_mask_inplace(MatrixT<T>& y, const TriangularMask& mask) {
    if (y.rows() != mask.batch() || y.cols() != mask.width()) {
        throw DimensionError("apply_mask: output " + y.shape_str() + " vs mask " +
                             std::to_string(mask.batch()) + "x" + std::to_string(mask.width()));
    }
    for (std::size_t i = 0; i < y.rows(); ++i) {
        T* row = y.row(i);
        for (std::size_t j = mask.width_at(i); j < y.cols(); ++j) {
            row[j] = T{0};
        }
    }
}

// Zeroes columns >= width on every row (evaluation-time width selection).
template <typename T>
void apply_eval_width_inplace(MatrixT<T>& y, std::size_t width) {
    if (width < 1 || width > y.cols()) {
        throw RangeError("eval width " + std::to_string(width) + " out of range [1, " +
                         std::to_string(y.cols()) + "]");
    }
    for (std::size_t i = 0; i < y.rows(); ++i) {
        T* row = y.row(i);
        for (std::size_t j = width; j < y.cols(); ++j) {
            row[j] = T{0};
        }
    }
}

}  // namespace tridrop
