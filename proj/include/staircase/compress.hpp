#pragma once

#include <utility>
#include <vector>

#include "staircase/svd.hpp"

namespace staircase {

/// Result of a unitary row compression of an m x n matrix A:
///   left * A = [ 0    ]   zero_rows rows, exactly zero by convention
///              [ rest ]   (m - zero_rows) x n, full row rank at the cut
/// left is built as P * U^* from a full SVD A = U S V^*, with P the
/// permutation moving the null rows to the top. cut records the threshold the
/// rank decision used.
struct RowCompression {
    UnitaryFactor left;
    Index zero_rows = 0;
    ComplexMatrix rest;
    double cut = 0.0;
};

/// Result of a unitary column compression of an m x n matrix B:
///   B * right = [ rest | 0 ]   rest is m x rank with independent columns
/// right is the V factor of a full SVD. cut as above.
struct ColumnCompression {
    UnitaryFactor right;
    Index rank = 0;
    ComplexMatrix rest;
    double cut = 0.0;
};

inline RowCompression row_compress(const ComplexMatrix& a, const Tolerance& tol = {}) {
    detail::require_finite(a, "row_compress");
    const Index m = a.rows();
    const Index n = a.cols();
    SvdResult dec = svd(a);
    const double smax = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
    const double cut = tol.cut(smax, m, n);
    Index rank = 0;
    for (double s : dec.singular_values)
        if (s > cut) ++rank;
    const Index zero_rows = m - rank;

    // Row i of U^* is the conjugate of column i of U; rows rank..m-1 span the
    // cokernel and are permuted to the top.
    ComplexMatrix s(m, m);
    for (Index i = 0; i < m; ++i) {
        const Index src = i < zero_rows ? rank + i : i - zero_rows;
        for (Index j = 0; j < m; ++j) s(i, j) = std::conj(dec.u(j, src));
    }

    ComplexMatrix sa = multiply(s, a);
    return {UnitaryFactor(std::move(s)), zero_rows, sa.block(zero_rows, 0, rank, n), cut};
}

inline ColumnCompression column_compress(const ComplexMatrix& b, const Tolerance& tol = {}) {
    detail::require_finite(b, "column_compress");
    const Index m = b.rows();
    const Index n = b.cols();
    SvdResult dec = svd(b);
    const double smax = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
    const double cut = tol.cut(smax, m, n);
    Index rank = 0;
    for (double s : dec.singular_values)
        if (s > cut) ++rank;

    ComplexMatrix br = multiply(b, dec.v);
    return {UnitaryFactor(std::move(dec.v)), rank, br.block(0, 0, m, rank), cut};
}

} // namespace staircase
