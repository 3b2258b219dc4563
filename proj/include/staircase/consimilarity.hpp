#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "staircase/compress.hpp"

namespace staircase {

namespace detail {

/// Fixed threshold for a whole staircase run, anchored to the input's scale.
/// Later iterates are judged against the original problem, not against their
/// own magnitude: a deflated block that is pure rounding noise must count as
/// zero, which a per-block relative cut would not do.
inline Tolerance anchor(const ComplexMatrix& a, Index rows, Index cols, const Tolerance& tol) {
    if (tol.mode() == Tolerance::Mode::absolute) return tol;
    const double cut = tol.cut(sigma_max(a), rows, cols);
    return Tolerance::absolute(std::max(cut, std::numeric_limits<double>::min()));
}

inline void require_nonincreasing(const std::vector<Index>& seq, const char* what) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] > seq[i - 1])
            throw ToleranceBreakdown(
                std::string(what) + ": index sequence increased from " +
                std::to_string(seq[i - 1]) + " to " + std::to_string(seq[i]) +
                " at position " + std::to_string(i + 1) +
                "; the rank tolerance cannot separate the singular structure");
}

} // namespace detail

/// One deflation step on a square matrix A: a unitary S with
///   S A S^T = [ 0_r  0  ]
///             [  *  next]
/// where r counts A's dependent rows at the tolerance. For a numerically
/// nonsingular input r = 0 and next is the whole transformed matrix.
struct ConsimStep {
    UnitaryFactor s;
    Index r = 0;
    ComplexMatrix next;
};

inline ConsimStep consim_step(const ComplexMatrix& a, const Tolerance& tol = {}) {
    if (!a.is_square())
        throw DimensionError("consim_step: matrix must be square");
    const Index n = a.rows();
    RowCompression rc = row_compress(a, tol);
    const Index r = rc.zero_rows;
    ComplexMatrix m = multiply(multiply(rc.left.matrix(), a), transpose(rc.left.matrix()));
    if (r > 0 && n > 0) {
        double z2 = 0.0;
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < n; ++j) z2 += std::norm(m(i, j));
        const double bound =
            10.0 * rc.cut * std::sqrt(static_cast<double>(r) * static_cast<double>(n));
        if (std::sqrt(z2) > bound)
            throw ToleranceBreakdown(
                "consim_step: declared zero rows exceed the tolerance bound");
    }
    return {std::move(rc.left), r, m.block(r, r, n - r, n - r)};
}

/// Outcome of the full deflation: indices r_seq = (r_1 >= ... >= r_t), the
/// square nonsingular trailing block, the accumulated unitary, and the
/// Frobenius norm of everything the staircase form declares zero.
struct ConsimResult {
    std::vector<Index> r_seq;
    ComplexMatrix regular;
    UnitaryFactor accumulated;
    double residual = 0.0;
};

/// Frobenius norm over the declared-zero region of accumulated * A *
/// accumulated^T: for the i-th stair, rows [off_i, off_i + r_i) across all
/// columns from off_i rightward, where off_i = r_1 + ... + r_{i-1}.
inline double consim_residual(const ComplexMatrix& a, const std::vector<Index>& r_seq,
                              const UnitaryFactor& accumulated) {
    const ComplexMatrix f =
        multiply(multiply(accumulated.matrix(), a), transpose(accumulated.matrix()));
    double s2 = 0.0;
    Index off = 0;
    for (Index r : r_seq) {
        for (Index i = off; i < off + r; ++i)
            for (Index j = off; j < a.cols(); ++j) s2 += std::norm(f(i, j));
        off += r;
    }
    return std::sqrt(s2);
}

/// Iterated deflation of a square matrix under unitary transformations
/// A -> S A S^T. Stops at the first numerically nonsingular iterate; a
/// nonsingular input is returned unchanged with an empty index sequence.
/// The rank cut is fixed once from the input's largest singular value.
inline ConsimResult consim_regularize(const ComplexMatrix& a, const Tolerance& tol = {}) {
    if (!a.is_square())
        throw DimensionError("consim_regularize: matrix must be square");
    detail::require_finite(a, "consim_regularize");
    const Index n = a.rows();
    const Tolerance step_tol = detail::anchor(a, n, n, tol);

    ConsimResult res;
    res.accumulated = UnitaryFactor::identity(n);
    res.regular = a;
    Index off = 0;
    while (res.regular.rows() > 0) {
        ConsimStep st = consim_step(res.regular, step_tol);
        if (st.r == 0) break;
        res.r_seq.push_back(st.r);
        detail::require_nonincreasing(res.r_seq, "consim_regularize");
        res.accumulated = UnitaryFactor(multiply(
            direct_sum(ComplexMatrix::identity(off), st.s.matrix()), res.accumulated.matrix()));
        off += st.r;
        res.regular = std::move(st.next);
    }
    res.residual = consim_residual(a, res.r_seq, res.accumulated);
    return res;
}

/// Multiset of nilpotent canonical blocks encoded by the index sequence:
/// a block of size K appears r_K - r_{K+1} times (with r_{t+1} = 0).
struct ConsimStructure {
    std::map<Index, Index> jordan_multiplicities;
    Index regular_dim = 0;
};

inline ConsimStructure consim_structure(const ConsimResult& res) {
    ConsimStructure out;
    out.regular_dim = res.regular.rows();
    const auto& r = res.r_seq;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Index next = i + 1 < r.size() ? r[i + 1] : 0;
        const Index mult = r[i] - next;
        if (mult > 0) out.jordan_multiplicities[static_cast<Index>(i) + 1] = mult;
    }
    return out;
}

} // namespace staircase
