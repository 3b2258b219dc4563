#pragma once

#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "staircase/matrix.hpp"

namespace staircase {

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix out(e.rows(), e.cols());
    for (Index i = 0; i < e.rows(); ++i)
        for (Index j = 0; j < e.cols(); ++j)
            out(i, j) = e(i, j);
    return out;
}

} // namespace detail

/// Full singular value decomposition a = u * diag(singular_values) * v^*.
/// u is rows x rows, v is cols x cols, singular values are nonincreasing and
/// min(rows, cols) many. Zero-dimension inputs yield identity factors and an
/// empty spectrum.
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> singular_values;
    ComplexMatrix v;
};

inline SvdResult svd(const ComplexMatrix& a) {
    detail::require_finite(a, "svd");
    if (a.has_zero_dim())
        return {ComplexMatrix::identity(a.rows()), {}, ComplexMatrix::identity(a.cols())};
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(detail::to_eigen(a),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = dec.singularValues();
    return {detail::from_eigen(dec.matrixU()),
            std::vector<double>(sv.data(), sv.data() + sv.size()),
            detail::from_eigen(dec.matrixV())};
}

/// Singular values only, nonincreasing.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    detail::require_finite(a, "singular_values");
    if (a.has_zero_dim()) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(detail::to_eigen(a));
    const auto& sv = dec.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

inline double sigma_max(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

/// Smallest singular value; +infinity for an empty spectrum so that
/// zero-dimension matrices pass vacuous nonsingularity checks.
inline double sigma_min(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    return sv.empty() ? std::numeric_limits<double>::infinity() : sv.back();
}

/// Number of singular values strictly above the tolerance cut.
inline Index rank_of(const ComplexMatrix& a, const Tolerance& tol = {}) {
    const auto sv = singular_values(a);
    if (sv.empty()) return 0;
    const double cut = tol.cut(sv.front(), a.rows(), a.cols());
    Index r = 0;
    for (double s : sv)
        if (s > cut) ++r;
    return r;
}

} // namespace staircase
