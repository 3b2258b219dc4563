#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "staircase/mixed_equivalence.hpp"

namespace staircase {

/// n x n Jordan block with ones on the subdiagonal:
/// jordan(2, 0) = [[0,0],[1,0]].
inline ComplexMatrix jordan(Index n, Complex lambda = 0.0) {
    if (n < 1) throw InvalidValueError("jordan: block size must be at least 1");
    ComplexMatrix j(n, n);
    for (Index i = 0; i < n; ++i) j(i, i) = lambda;
    for (Index i = 0; i + 1 < n; ++i) j(i + 1, i) = 1.0;
    return j;
}

/// n x (n-1) block with ones on the subdiagonal: F_block(2) = [[0],[1]],
/// F_block(1) is 1 x 0.
inline ComplexMatrix F_block(Index n) {
    if (n < 1) throw InvalidValueError("F_block: block size must be at least 1");
    ComplexMatrix f(n, n - 1);
    for (Index i = 0; i + 1 < n; ++i) f(i + 1, i) = 1.0;
    return f;
}

/// n x (n-1) block with ones on the diagonal: G_block(2) = [[1],[0]],
/// G_block(1) is 1 x 0.
inline ComplexMatrix G_block(Index n) {
    if (n < 1) throw InvalidValueError("G_block: block size must be at least 1");
    ComplexMatrix g(n, n - 1);
    for (Index i = 0; i + 1 < n; ++i) g(i, i) = 1.0;
    return g;
}

/// 2 x 2 block [[0,1],[mu,0]]; mu must be non-real or a negative real.
inline ComplexMatrix mu_block(Complex mu) {
    if (mu.imag() == 0.0 && mu.real() >= 0.0)
        throw InvalidValueError("mu_block: mu must be non-real or a negative real");
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = mu;
    return m;
}

/// Canonical block families. The first three are single-matrix kinds, the
/// rest are pair kinds. Size n is ignored by the fixed 2 x 2 mu kinds; param
/// carries lambda (finite real >= 0) or mu (non-real or negative real) where
/// the family has one.
enum class BlockKind {
    jordan_zero,    // J_n(0)
    jordan_lambda,  // J_n(lambda)
    mu,             // [[0,1],[mu,0]]
    fg,             // (F_n, G_n)
    fgt,            // (F_n^T, G_n^T)
    ji,             // (J_n(0), I_n)
    ij,             // (I_n, J_n(0))
    ij_lambda,      // (I_n, J_n(lambda))
    i_mu            // (I_2, [[0,1],[mu,0]])
};

enum class ProblemKind { consimilarity, mixed_pair };

struct BlockDescriptor {
    BlockKind kind = BlockKind::jordan_zero;
    Index n = 1;
    Complex param{};
    Index multiplicity = 1;

    friend bool operator==(const BlockDescriptor&, const BlockDescriptor&) = default;
};

inline bool is_pair_kind(BlockKind k) {
    switch (k) {
        case BlockKind::fg:
        case BlockKind::fgt:
        case BlockKind::ji:
        case BlockKind::ij:
        case BlockKind::ij_lambda:
        case BlockKind::i_mu: return true;
        default: return false;
    }
}

inline void validate_block(const BlockDescriptor& b) {
    if (b.multiplicity < 1)
        throw InvalidValueError("BlockDescriptor: multiplicity must be at least 1");
    const bool fixed_size = b.kind == BlockKind::mu || b.kind == BlockKind::i_mu;
    if (!fixed_size && b.n < 1)
        throw InvalidValueError("BlockDescriptor: block size must be at least 1");
    if (!std::isfinite(b.param.real()) || !std::isfinite(b.param.imag()))
        throw InvalidValueError("BlockDescriptor: parameter must be finite");
    switch (b.kind) {
        case BlockKind::jordan_lambda:
        case BlockKind::ij_lambda:
            if (b.param.imag() != 0.0 || b.param.real() < 0.0)
                throw InvalidValueError(
                    "BlockDescriptor: lambda must be a nonnegative real");
            break;
        case BlockKind::mu:
        case BlockKind::i_mu:
            if (b.param.imag() == 0.0 && b.param.real() >= 0.0)
                throw InvalidValueError(
                    "BlockDescriptor: mu must be non-real or a negative real");
            break;
        default: break;
    }
}

/// Shape of a single copy of the block.
inline Index block_rows(const BlockDescriptor& b) {
    switch (b.kind) {
        case BlockKind::mu:
        case BlockKind::i_mu: return 2;
        case BlockKind::fgt: return b.n - 1;
        default: return b.n;
    }
}

inline Index block_cols(const BlockDescriptor& b) {
    switch (b.kind) {
        case BlockKind::mu:
        case BlockKind::i_mu: return 2;
        case BlockKind::fg: return b.n - 1;
        default: return b.n;
    }
}

/// One copy of a single-matrix block.
inline ComplexMatrix matrix_block(const BlockDescriptor& b) {
    validate_block(b);
    switch (b.kind) {
        case BlockKind::jordan_zero: return jordan(b.n, 0.0);
        case BlockKind::jordan_lambda: return jordan(b.n, b.param);
        case BlockKind::mu: return mu_block(b.param);
        default:
            throw InvalidValueError("matrix_block: descriptor is a pair kind");
    }
}

/// One copy of a pair block.
inline MatrixPair pair_block(const BlockDescriptor& b) {
    validate_block(b);
    switch (b.kind) {
        case BlockKind::fg: return {F_block(b.n), G_block(b.n)};
        case BlockKind::fgt: return {transpose(F_block(b.n)), transpose(G_block(b.n))};
        case BlockKind::ji: return {jordan(b.n, 0.0), ComplexMatrix::identity(b.n)};
        case BlockKind::ij: return {ComplexMatrix::identity(b.n), jordan(b.n, 0.0)};
        case BlockKind::ij_lambda:
            return {ComplexMatrix::identity(b.n), jordan(b.n, b.param)};
        case BlockKind::i_mu: return {ComplexMatrix::identity(2), mu_block(b.param)};
        default:
            throw InvalidValueError("pair_block: descriptor is a single-matrix kind");
    }
}

/// A decomposition as data: singular blocks with multiplicities plus the
/// regular part matching the problem kind (the other regular field stays
/// empty).
struct DecompositionDescriptor {
    ProblemKind kind = ProblemKind::consimilarity;
    std::vector<BlockDescriptor> blocks;
    ComplexMatrix regular_matrix;
    MatrixPair regular_pair;

    friend bool operator==(const DecompositionDescriptor&,
                           const DecompositionDescriptor&) = default;
};

namespace detail {

inline int family_rank(BlockKind k) {
    switch (k) {
        case BlockKind::jordan_zero: return 0;
        case BlockKind::jordan_lambda: return 1;
        case BlockKind::mu: return 2;
        case BlockKind::fg: return 10;
        case BlockKind::ji: return 11;
        case BlockKind::fgt: return 12;
        case BlockKind::ij: return 13;
        case BlockKind::ij_lambda: return 14;
        case BlockKind::i_mu: return 15;
    }
    return 99;
}

} // namespace detail

/// Deterministic assembly order: family, then size, then parameter.
inline std::vector<BlockDescriptor> canonical_block_order(std::vector<BlockDescriptor> blocks) {
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const BlockDescriptor& a, const BlockDescriptor& b) {
                         const auto ka = std::make_tuple(detail::family_rank(a.kind), a.n,
                                                         a.param.real(), a.param.imag());
                         const auto kb = std::make_tuple(detail::family_rank(b.kind), b.n,
                                                         b.param.real(), b.param.imag());
                         return ka < kb;
                     });
    return blocks;
}

/// Direct sum of all blocks (in canonical order, each repeated by its
/// multiplicity) followed by the regular part.
inline ComplexMatrix assemble_matrix(const DecompositionDescriptor& d) {
    if (d.kind != ProblemKind::consimilarity)
        throw InvalidValueError("assemble_matrix: descriptor is not a consimilarity decomposition");
    if (d.regular_pair.rows() != 0 || d.regular_pair.cols() != 0)
        throw InvalidValueError("assemble_matrix: consimilarity descriptor carries a regular pair");
    if (!d.regular_matrix.is_square())
        throw DimensionError("assemble_matrix: regular part must be square");
    ComplexMatrix acc(0, 0);
    for (const BlockDescriptor& b : canonical_block_order(d.blocks)) {
        validate_block(b);
        if (is_pair_kind(b.kind))
            throw InvalidValueError("assemble_matrix: descriptor contains a pair block");
        const ComplexMatrix block = matrix_block(b);
        for (Index c = 0; c < b.multiplicity; ++c) acc = direct_sum(acc, block);
    }
    return direct_sum(acc, d.regular_matrix);
}

inline MatrixPair assemble_pair(const DecompositionDescriptor& d) {
    if (d.kind != ProblemKind::mixed_pair)
        throw InvalidValueError("assemble_pair: descriptor is not a pair decomposition");
    if (d.regular_matrix.rows() != 0 || d.regular_matrix.cols() != 0)
        throw InvalidValueError("assemble_pair: pair descriptor carries a regular matrix");
    if (!d.regular_pair.first.is_square())
        throw DimensionError("assemble_pair: regular part must be square");
    MatrixPair acc;
    for (const BlockDescriptor& b : canonical_block_order(d.blocks)) {
        validate_block(b);
        if (!is_pair_kind(b.kind))
            throw InvalidValueError("assemble_pair: descriptor contains a single-matrix block");
        const MatrixPair block = pair_block(b);
        for (Index c = 0; c < b.multiplicity; ++c) acc = direct_sum(acc, block);
    }
    return direct_sum(acc, d.regular_pair);
}

} // namespace staircase
