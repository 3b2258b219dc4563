#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "staircase/consimilarity.hpp"

namespace staircase {

/// Two matrices of identical shape, transformed jointly: the first picks up
/// the conjugated right factor, the second the plain one.
struct MatrixPair {
    ComplexMatrix first;
    ComplexMatrix second;

    MatrixPair() = default;
    MatrixPair(ComplexMatrix a, ComplexMatrix b)
        : first(std::move(a)), second(std::move(b)) {
        if (first.rows() != second.rows() || first.cols() != second.cols())
            throw DimensionError("MatrixPair: matrices must have identical shape");
    }

    Index rows() const { return first.rows(); }
    Index cols() const { return first.cols(); }

    friend bool operator==(const MatrixPair& a, const MatrixPair& b) {
        return a.first == b.first && a.second == b.second;
    }
};

inline MatrixPair direct_sum(const MatrixPair& a, const MatrixPair& b) {
    return {direct_sum(a.first, b.first), direct_sum(a.second, b.second)};
}

/// Components transposed and swapped. Plain utility; note that this map does
/// NOT send equivalent pairs to equivalent pairs (the conjugation in the
/// transformation group switches sides under transposition), so it must not
/// feed one pass's output into another. Use covariant_swap for that.
inline MatrixPair swapped_transpose(const MatrixPair& p) {
    return {transpose(p.second), transpose(p.first)};
}

/// Class-preserving swap (A, B) -> (B^T, A^*). If (A', B') = (S A R, S B R^-)
/// then (B'^T, A'^*) = (R^* B^T S^T, R^* A^* conj(S^T)) — again a transform of
/// the same group — so the swapped pair's equivalence class depends only on
/// the input's class. On real pairs it coincides with swapped_transpose. This
/// is the correct bridge between the two deflation passes: it exposes the
/// column-type singular structure to the row-driven deflation without
/// changing what is being classified.
inline MatrixPair covariant_swap(const MatrixPair& p) {
    return {transpose(p.second), conjugate_transpose(p.first)};
}

/// Inverse of covariant_swap: (U, V) -> (V^*, U^T); equally class-preserving.
inline MatrixPair covariant_swap_inverse(const MatrixPair& p) {
    return {conjugate_transpose(p.second), transpose(p.first)};
}

/// One deflation step on a pair (A, B): unitary S (rows) and R (columns) with
///   S A conj(R) = [ 0  0 ]      S B R = [ B'' 0 ]
///                 [ *  A1]              [  *  B1]
/// k counts A's dependent rows; l is the column rank of the top k rows of
/// S B (so B'' is k x l with independent columns); next = (A1, B1) is the
/// trailing (rows-k) x (cols-l) pair. For a full-row-rank A, k = l = 0 and
/// next is the whole transformed pair.
struct PairStep {
    UnitaryFactor left;
    UnitaryFactor right;
    Index k = 0;
    Index l = 0;
    MatrixPair next;
};

namespace detail {

inline PairStep pair_step_anchored(const MatrixPair& p, const Tolerance& row_tol,
                                   const Tolerance& col_tol) {
    const Index m = p.rows();
    const Index n = p.cols();
    RowCompression rc = row_compress(p.first, row_tol);
    const Index k = rc.zero_rows;
    ComplexMatrix sb = multiply(rc.left.matrix(), p.second);
    ColumnCompression cc = column_compress(sb.block(0, 0, k, n), col_tol);
    const Index l = cc.rank;

    ComplexMatrix fa = multiply(multiply(rc.left.matrix(), p.first), conjugate(cc.right.matrix()));
    ComplexMatrix fb = multiply(sb, cc.right.matrix());

    if (k > 0) {
        double a2 = 0.0;
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < n; ++j) a2 += std::norm(fa(i, j));
        const double a_bound =
            10.0 * rc.cut * std::sqrt(static_cast<double>(k) * static_cast<double>(n));
        if (std::sqrt(a2) > a_bound)
            throw ToleranceBreakdown(
                "pair_step: declared zero rows of the first matrix exceed the tolerance bound");
        if (n - l > 0) {
            double b2 = 0.0;
            for (Index i = 0; i < k; ++i)
                for (Index j = l; j < n; ++j) b2 += std::norm(fb(i, j));
            const double b_bound =
                10.0 * cc.cut * std::sqrt(static_cast<double>(k) * static_cast<double>(n - l));
            if (std::sqrt(b2) > b_bound)
                throw ToleranceBreakdown(
                    "pair_step: declared zero columns of the second matrix exceed the "
                    "tolerance bound");
        }
    }

    return {std::move(rc.left), std::move(cc.right), k, l,
            MatrixPair(fa.block(k, l, m - k, n - l), fb.block(k, l, m - k, n - l))};
}

/// l_i never exceeds k_i (a rank of k rows); k_{i+1} > l_i signals that the
/// tolerance produced an impossible staircase.
inline void require_staircase_shape(const std::vector<std::pair<Index, Index>>& kl) {
    for (std::size_t i = 0; i < kl.size(); ++i) {
        if (i > 0 && kl[i].first > kl[i - 1].second)
            throw ToleranceBreakdown(
                "pair_regularize: index sequence violates l_" + std::to_string(i) +
                " >= k_" + std::to_string(i + 1) + " (" + std::to_string(kl[i - 1].second) +
                " < " + std::to_string(kl[i].first) +
                "); the rank tolerance cannot separate the singular structure");
    }
}

} // namespace detail

inline PairStep pair_step(const MatrixPair& p, const Tolerance& tol = {}) {
    return detail::pair_step_anchored(p, tol, tol);
}

/// Outcome of the first (or second) deflation pass: kl_seq = ((k_1, l_1), ...,
/// (k_t, l_t)) with k_i >= l_i >= k_{i+1}, the remaining pair with full row
/// rank in its first component, both accumulated unitaries, and the Frobenius
/// norm of the declared-zero regions.
struct PairResult {
    std::vector<std::pair<Index, Index>> kl_seq;
    MatrixPair remainder;
    UnitaryFactor left;
    UnitaryFactor right;
    double residual = 0.0;
};

/// Frobenius norm over the declared-zero regions of the transformed pair
/// (left * A * conj(right), left * B * right): for the i-th stair, rows
/// [row_off_i, row_off_i + k_i) from column col_off_i rightward in the first
/// component and from column col_off_i + l_i rightward in the second.
inline double pair_residual(const MatrixPair& p, const PairResult& res) {
    const ComplexMatrix fa =
        multiply(multiply(res.left.matrix(), p.first), conjugate(res.right.matrix()));
    const ComplexMatrix fb = multiply(multiply(res.left.matrix(), p.second), res.right.matrix());
    double s2 = 0.0;
    Index row_off = 0;
    Index col_off = 0;
    for (const auto& [k, l] : res.kl_seq) {
        for (Index i = row_off; i < row_off + k; ++i) {
            for (Index j = col_off; j < p.cols(); ++j) s2 += std::norm(fa(i, j));
            for (Index j = col_off + l; j < p.cols(); ++j) s2 += std::norm(fb(i, j));
        }
        row_off += k;
        col_off += l;
    }
    return std::sqrt(s2);
}

/// Iterated deflation of a pair under (A, B) -> (S A conj(R), S B R). Stops
/// once the first component has full row rank; such an input is returned
/// unchanged with an empty index sequence. Rank cuts are fixed once per side
/// from the input matrices' largest singular values.
inline PairResult pair_regularize(const MatrixPair& p, const Tolerance& tol = {}) {
    detail::require_finite(p.first, "pair_regularize");
    detail::require_finite(p.second, "pair_regularize");
    const Index m = p.rows();
    const Index n = p.cols();
    const Tolerance row_tol = detail::anchor(p.first, m, n, tol);
    const Tolerance col_tol = detail::anchor(p.second, m, n, tol);

    PairResult res;
    res.left = UnitaryFactor::identity(m);
    res.right = UnitaryFactor::identity(n);
    res.remainder = p;
    Index row_off = 0;
    Index col_off = 0;
    while (res.remainder.rows() > 0) {
        PairStep st = detail::pair_step_anchored(res.remainder, row_tol, col_tol);
        if (st.k == 0) break;
        res.kl_seq.emplace_back(st.k, st.l);
        detail::require_staircase_shape(res.kl_seq);
        res.left = UnitaryFactor(multiply(
            direct_sum(ComplexMatrix::identity(row_off), st.left.matrix()), res.left.matrix()));
        res.right = UnitaryFactor(multiply(
            res.right.matrix(), direct_sum(ComplexMatrix::identity(col_off), st.right.matrix())));
        row_off += st.k;
        col_off += st.l;
        res.remainder = std::move(st.next);
    }
    res.residual = pair_residual(p, res);
    return res;
}

/// Blocks recovered by one pass: a rectangular block of size i appears
/// k_i - l_i times, a square nilpotent-with-identity block of size i appears
/// l_i - k_{i+1} times (k_{t+1} = 0).
struct FirstPassStructure {
    std::map<Index, Index> fg;
    std::map<Index, Index> ji;
    MatrixPair remainder;
};

inline FirstPassStructure pair_structure_first_pass(const PairResult& res) {
    FirstPassStructure out;
    out.remainder = res.remainder;
    const auto& kl = res.kl_seq;
    for (std::size_t i = 0; i < kl.size(); ++i) {
        const Index k_next = i + 1 < kl.size() ? kl[i + 1].first : 0;
        const Index size = static_cast<Index>(i) + 1;
        if (kl[i].first - kl[i].second > 0) out.fg[size] = kl[i].first - kl[i].second;
        if (kl[i].second - k_next > 0) out.ji[size] = kl[i].second - k_next;
    }
    return out;
}

/// Complete singular structure of a pair: multiplicities of the four block
/// families plus the square nonsingular regular pair.
struct PairStructure {
    std::map<Index, Index> fg;   // (F_n, G_n)
    std::map<Index, Index> ji;   // (J_n(0), I_n)
    std::map<Index, Index> fgt;  // (F_n^T, G_n^T)
    std::map<Index, Index> ij;   // (I_n, J_n(0))
    MatrixPair regular;
};

/// Merge of the two passes. The second pass ran on the covariant swap of the
/// first remainder, so its fg/ji families are the fgt/ij families of the
/// original pair, and the regular pair is its remainder swapped back through
/// covariant_swap_inverse. Certifies that the regular pair is square with
/// both smallest singular values above the tolerance cut.
inline PairStructure pair_structure_from_passes(const PairResult& first,
                                                const PairResult& second,
                                                const Tolerance& tol = {}) {
    PairStructure out;
    FirstPassStructure f1 = pair_structure_first_pass(first);
    out.fg = std::move(f1.fg);
    out.ji = std::move(f1.ji);
    FirstPassStructure f2 = pair_structure_first_pass(second);
    out.fgt = std::move(f2.fg);
    out.ij = std::move(f2.ji);
    out.regular = covariant_swap_inverse(second.remainder);

    if (!out.regular.first.is_square())
        throw ToleranceBreakdown(
            "pair_structure_from_passes: regular pair is not square; the rank tolerance "
            "cannot separate the singular structure");
    for (const ComplexMatrix* m : {&out.regular.first, &out.regular.second}) {
        if (m->rows() == 0) continue;
        const double smax = sigma_max(*m);
        if (sigma_min(*m) <= tol.cut(smax, m->rows(), m->cols()))
            throw ToleranceBreakdown(
                "pair_structure_from_passes: regular pair is numerically singular at the "
                "tolerance cut");
    }
    return out;
}

struct FullRegularization {
    PairResult first_pass;
    PairResult second_pass;
    PairStructure structure;
};

/// Both passes plus the merged structure: pass one on the input, pass two on
/// the covariant swap of its remainder.
inline FullRegularization full_regularize(const MatrixPair& p, const Tolerance& tol = {}) {
    FullRegularization out;
    out.first_pass = pair_regularize(p, tol);
    out.second_pass = pair_regularize(covariant_swap(out.first_pass.remainder), tol);
    out.structure = pair_structure_from_passes(out.first_pass, out.second_pass, tol);
    return out;
}

} // namespace staircase
