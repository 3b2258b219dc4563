#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "staircase/errors.hpp"

namespace staircase {

using Complex = std::complex<double>;
using Index = std::int64_t;

/// Dense complex matrix, row-major contiguous storage.
///
/// Zero-dimension shapes (m x 0, 0 x n, 0 x 0) are first-class values: the
/// staircase recursions bottom out on them and direct sums must absorb them
/// without special cases.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(Index rows, Index cols)
        : rows_(check_dim(rows, "rows")), cols_(check_dim(cols, "cols")),
          storage_(static_cast<std::size_t>(rows * cols)) {}

    ComplexMatrix(Index rows, Index cols, std::vector<Complex> entries)
        : rows_(check_dim(rows, "rows")), cols_(check_dim(cols, "cols")),
          storage_(std::move(entries)) {
        if (storage_.size() != static_cast<std::size_t>(rows_ * cols_))
            throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
    }

    static ComplexMatrix zeros(Index rows, Index cols) { return {rows, cols}; }

    static ComplexMatrix identity(Index n) {
        ComplexMatrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool has_zero_dim() const { return rows_ == 0 || cols_ == 0; }

    Complex& operator()(Index i, Index j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return storage_[static_cast<std::size_t>(i * cols_ + j)];
    }
    const Complex& operator()(Index i, Index j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return storage_[static_cast<std::size_t>(i * cols_ + j)];
    }

    const std::vector<Complex>& entries() const { return storage_; }

    /// Copy of the sub-block starting at (row0, col0) with shape nrows x ncols.
    ComplexMatrix block(Index row0, Index col0, Index nrows, Index ncols) const {
        if (row0 < 0 || col0 < 0 || nrows < 0 || ncols < 0 ||
            row0 + nrows > rows_ || col0 + ncols > cols_)
            throw DimensionError("ComplexMatrix::block: range out of bounds");
        ComplexMatrix out(nrows, ncols);
        for (Index i = 0; i < nrows; ++i)
            for (Index j = 0; j < ncols; ++j)
                out(i, j) = (*this)(row0 + i, col0 + j);
        return out;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.storage_ == b.storage_;
    }

private:
    static Index check_dim(Index d, const char* which) {
        if (d < 0)
            throw DimensionError(std::string("ComplexMatrix: negative ") + which);
        return d;
    }

    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Complex> storage_;
};

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

inline ComplexMatrix conjugate_transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(j, i) = std::conj(a(i, j));
    return out;
}

/// Matrix product; inner dimensions must agree. A product through a zero
/// inner dimension is the zero matrix of the outer shape.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("multiply: inner dimensions disagree");
    ComplexMatrix out(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (Index j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("add: shapes disagree");
    ComplexMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) + b(i, j);
    return out;
}

inline ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("subtract: shapes disagree");
    ComplexMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) - b(i, j);
    return out;
}

inline ComplexMatrix scale(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = s * a(i, j);
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return multiply(a, b);
}
inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return scale(s, a); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    return subtract(a, b);
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Block-diagonal direct sum. Zero-dimension summands contribute their rows
/// and columns without entries, so e.g. a 2x1 block plus a 1x0 block is 3x1.
inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (Index i = 0; i < b.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

inline ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
    if (top.cols() != bottom.cols())
        throw DimensionError("vstack: column counts disagree");
    ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
    for (Index i = 0; i < top.rows(); ++i)
        for (Index j = 0; j < top.cols(); ++j)
            out(i, j) = top(i, j);
    for (Index i = 0; i < bottom.rows(); ++i)
        for (Index j = 0; j < bottom.cols(); ++j)
            out(top.rows() + i, j) = bottom(i, j);
    return out;
}

inline ComplexMatrix hstack(const ComplexMatrix& left, const ComplexMatrix& right) {
    if (left.rows() != right.rows())
        throw DimensionError("hstack: row counts disagree");
    ComplexMatrix out(left.rows(), left.cols() + right.cols());
    for (Index i = 0; i < left.rows(); ++i) {
        for (Index j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
        for (Index j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
    }
    return out;
}

inline bool all_finite(const ComplexMatrix& a) {
    for (const Complex& z : a.entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

namespace detail {
inline void require_finite(const ComplexMatrix& a, const char* op) {
    if (!all_finite(a))
        throw InvalidValueError(std::string(op) + ": input has non-finite entries");
}
} // namespace detail

/// Numerical rank threshold. In relative mode the cut for a matrix is
/// value * max(rows, cols) * sigma_max; in absolute mode it is value itself.
/// Singular values strictly above the cut count toward the rank.
class Tolerance {
public:
    enum class Mode { relative, absolute };

    /// Default: relative 1e-10.
    Tolerance() : Tolerance(Mode::relative, 1e-10) {}

    static Tolerance relative(double value) { return {Mode::relative, value}; }
    static Tolerance absolute(double value) { return {Mode::absolute, value}; }

    Mode mode() const { return mode_; }
    double value() const { return value_; }

    double cut(double sigma_max, Index rows, Index cols) const {
        if (mode_ == Mode::absolute) return value_;
        return value_ * static_cast<double>(std::max(rows, cols)) * sigma_max;
    }

    friend bool operator==(const Tolerance&, const Tolerance&) = default;

private:
    Tolerance(Mode mode, double value) : mode_(mode), value_(value) {
        if (!std::isfinite(value) || value <= 0.0)
            throw InvalidValueError("Tolerance: value must be positive and finite");
    }

    Mode mode_;
    double value_;
};

/// Square matrix tracked as a unitary transformation. Construction does not
/// re-verify unitarity (factors come from rank-revealing factorizations and
/// products of such); defect() measures the deviation on demand.
class UnitaryFactor {
public:
    UnitaryFactor() = default;

    explicit UnitaryFactor(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square())
            throw DimensionError("UnitaryFactor: matrix must be square");
    }

    static UnitaryFactor identity(Index n) { return UnitaryFactor(ComplexMatrix::identity(n)); }

    const ComplexMatrix& matrix() const { return matrix_; }
    Index dim() const { return matrix_.rows(); }

    /// || U U* - I ||_F
    double defect() const {
        const ComplexMatrix g = multiply(matrix_, conjugate_transpose(matrix_));
        return frobenius_norm(subtract(g, ComplexMatrix::identity(matrix_.rows())));
    }

private:
    ComplexMatrix matrix_;
};

} // namespace staircase
