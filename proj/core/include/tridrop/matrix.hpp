#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tridrop/errors.hpp"

namespace tridrop {

// Dense row-major matrix. Training code instantiates T = float; the gradient
// checker re-runs the same kernels with T = double.
//
// Invariant maintained by every operation in this library: entries stay
// finite. Hot paths do not re-verify it; `all_finite` exists for the places
// that must (loss values, policy actions).
template <typename T>
class MatrixT {
public:
    MatrixT() : rows_(0), cols_(0) {}
    MatrixT(std::size_t rows, std::size_t cols, T fill = T{0})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static MatrixT identity(std::size_t n) {
        MatrixT m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T{1};
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    T operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T* row(std::size_t i) {
        assert(i < rows_);
        return data_.data() + i * cols_;
    }
    const T* row(std::size_t i) const {
        assert(i < rows_);
        return data_.data() + i * cols_;
    }

    std::span<T> row_span(std::size_t i) { return {row(i), cols_}; }
    std::span<const T> row_span(std::size_t i) const { return {row(i), cols_}; }

    std::span<T> flat() { return {data_.data(), data_.size()}; }
    std::span<const T> flat() const { return {data_.data(), data_.size()}; }

    bool same_shape(const MatrixT& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    void fill(T value) { data_.assign(data_.size(), value); }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using Matrix = MatrixT<float>;
using MatrixD = MatrixT<double>;

namespace detail {

// All gemm paths fund their per-element accumulation through this one fused
// op, so an output element sees the identical IEEE-754 operation sequence no
// matter which tile width or remainder loop computed it. Two consequences the
// rest of the library depends on:
//   * reruns are bitwise reproducible, and
//   * a column that is exactly zero in `a` never perturbs the accumulator,
//     which makes a masked layer agree bitwise with its pruned extraction.
template <typename T>
inline T fmadd(T a, T b, T acc) {
    return std::fma(a, b, acc);
}

}  // namespace detail

// out += a * b. Accumulation over k is strictly ordered per output element.
template <typename T>
void matmul_acc(MatrixT<T>& out, const MatrixT<T>& a, const MatrixT<T>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions differ: " + a.shape_str() + " * " +
                             b.shape_str());
    }
    if (out.rows() != a.rows() || out.cols() != b.cols()) {
        throw DimensionError("matmul: output shape " + out.shape_str() + " does not match " +
                             std::to_string(a.rows()) + "x" + std::to_string(b.cols()));
    }
    const std::size_t m = a.rows(), k_dim = a.cols(), n = b.cols();
    // Register-tiled microkernel: MR output rows by NR output columns held in
    // local accumulators across the whole k loop.
    constexpr std::size_t MR = 4;
    constexpr std::size_t NR = 256 / sizeof(T);

    for (std::size_t j0 = 0; j0 < n; j0 += NR) {
        const std::size_t jw = std::min(NR, n - j0);
        std::size_t i0 = 0;
        if (jw == NR) {
            for (; i0 + MR <= m; i0 += MR) {
                T acc[MR][NR];
                for (std::size_t r = 0; r < MR; ++r) {
                    const T* orow = out.row(i0 + r) + j0;
                    for (std::size_t j = 0; j < NR; ++j) {
                        acc[r][j] = orow[j];
                    }
                }
                for (std::size_t k = 0; k < k_dim; ++k) {
                    const T* brow = b.row(k) + j0;
                    for (std::size_t r = 0; r < MR; ++r) {
                        const T av = a(i0 + r, k);
                        for (std::size_t j = 0; j < NR; ++j) {
                            acc[r][j] = detail::fmadd(av, brow[j], acc[r][j]);
                        }
                    }
                }
                for (std::size_t r = 0; r < MR; ++r) {
                    T* orow = out.row(i0 + r) + j0;
                    for (std::size_t j = 0; j < NR; ++j) {
                        orow[j] = acc[r][j];
                    }
                }
            }
        }
        // Remainder rows and narrow column panels: same k-ordered fma chain.
        for (; i0 < m; ++i0) {
            T* orow = out.row(i0) + j0;
            for (std::size_t k = 0; k < k_dim; ++k) {
                const T av = a(i0, k);
                const T* brow = b.row(k) + j0;
                for (std::size_t j = 0; j < jw; ++j) {
                    orow[j] = detail::fmadd(av, brow[j], orow[j]);
                }
            }
        }
    }
}

template <typename T>
MatrixT<T> matmul(const MatrixT<T>& a, const MatrixT<T>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions differ: " + a.shape_str() + " * " +
                             b.shape_str());
    }
    MatrixT<T> out(a.rows(), b.cols());
    matmul_acc(out, a, b);
    return out;
}

template <typename T>
MatrixT<T> transpose(const MatrixT<T>& a) {
    MatrixT<T> t(a.cols(), a.rows());
    constexpr std::size_t B = 32;
    for (std::size_t i0 = 0; i0 < a.rows(); i0 += B) {
        const std::size_t i1 = std::min(i0 + B, a.rows());
        for (std::size_t j0 = 0; j0 < a.cols(); j0 += B) {
            const std::size_t j1 = std::min(j0 + B, a.cols());
            for (std::size_t i = i0; i < i1; ++i) {
                for (std::size_t j = j0; j < j1; ++j) {
                    t(j, i) = a(i, j);
                }
            }
        }
    }
    return t;
}

// a^T * b, reducing over the shared row dimension (used for weight gradients).
template <typename T>
MatrixT<T> matmul_tn(const MatrixT<T>& a, const MatrixT<T>& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("matmul_tn: row counts differ: " + a.shape_str() + " vs " +
                             b.shape_str());
    }
    return matmul(transpose(a), b);
}

// a * b^T (used for input gradients).
template <typename T>
MatrixT<T> matmul_nt(const MatrixT<T>& a, const MatrixT<T>& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("matmul_nt: column counts differ: " + a.shape_str() + " vs " +
                             b.shape_str());
    }
    return matmul(a, transpose(b));
}

template <typename T>
bool all_finite(const MatrixT<T>& m) {
    for (T v : m.flat()) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

template <typename T>
double max_abs_diff(const MatrixT<T>& a, const MatrixT<T>& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("max_abs_diff: shapes differ: " + a.shape_str() + " vs " +
                             b.shape_str());
    }
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        worst = std::max(worst, std::abs(static_cast<double>(a.data()[idx]) -
                                         static_cast<double>(b.data()[idx])));
    }
    return worst;
}

inline MatrixD widen(const Matrix& m) {
    MatrixD d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) {
        d.data()[i] = static_cast<double>(m.data()[i]);
    }
    return d;
}

}  // namespace tridrop
