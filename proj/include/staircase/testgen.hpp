#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "staircase/blocks.hpp"

namespace staircase::testgen {

enum class TransformKind { unitary, general };

/// Deterministic scrambling recipe. condition_bound applies to general
/// transforms only: their singular values span [1/sqrt(c), sqrt(c)].
struct ScrambleSpec {
    std::uint64_t seed = 0;
    TransformKind transform_kind = TransformKind::unitary;
    double condition_bound = 1.0;
};

namespace detail {

inline ComplexMatrix gaussian(std::mt19937_64& rng, Index m, Index n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    ComplexMatrix g(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) g(i, j) = Complex(nd(rng), nd(rng));
    return g;
}

/// QR of a complex Gaussian matrix with the R-diagonal phases absorbed into
/// Q makes Q Haar distributed.
inline UnitaryFactor unitary_from_gaussian(const ComplexMatrix& g) {
    Eigen::MatrixXcd eg = staircase::detail::to_eigen(g);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(eg);
    Eigen::MatrixXcd q = qr.householderQ();
    for (Index i = 0; i < q.cols(); ++i) {
        const Complex d = qr.matrixQR()(i, i);
        const double a = std::abs(d);
        q.col(i) *= a == 0.0 ? Complex(1.0) : d / a;
    }
    return UnitaryFactor(staircase::detail::from_eigen(q));
}

inline std::vector<double> spread_spectrum(Index n, double condition_bound) {
    std::vector<double> s(static_cast<std::size_t>(n), 1.0);
    if (n >= 2) {
        const double half = 0.5 * std::log(condition_bound);
        for (Index i = 0; i < n; ++i)
            s[static_cast<std::size_t>(i)] =
                std::exp(half * (1.0 - 2.0 * static_cast<double>(i) /
                                           static_cast<double>(n - 1)));
    }
    return s;
}

inline ComplexMatrix scale_columns(const ComplexMatrix& a, const std::vector<double>& s,
                                   bool invert) {
    ComplexMatrix out = a;
    for (Index j = 0; j < a.cols(); ++j) {
        const double f = invert ? 1.0 / s[static_cast<std::size_t>(j)]
                                : s[static_cast<std::size_t>(j)];
        for (Index i = 0; i < a.rows(); ++i) out(i, j) *= f;
    }
    return out;
}

inline void require_condition_bound(double c) {
    if (!std::isfinite(c) || c < 1.0)
        throw InvalidValueError("ScrambleSpec: condition bound must be finite and >= 1");
}

} // namespace detail

inline UnitaryFactor random_unitary(Index n, std::uint64_t seed) {
    if (n == 0) return UnitaryFactor(ComplexMatrix(0, 0));
    std::mt19937_64 rng(seed);
    return detail::unitary_from_gaussian(detail::gaussian(rng, n, n));
}

/// U * diag(s) * V^* with Haar U, V and exact spectrum spanning
/// [1/sqrt(c), sqrt(c)], so the condition number is exactly c (1 for n <= 1).
inline ComplexMatrix random_nonsingular(Index n, std::uint64_t seed, double condition_bound) {
    detail::require_condition_bound(condition_bound);
    if (n == 0) return {0, 0};
    std::mt19937_64 rng(seed);
    const UnitaryFactor u = detail::unitary_from_gaussian(detail::gaussian(rng, n, n));
    const UnitaryFactor v = detail::unitary_from_gaussian(detail::gaussian(rng, n, n));
    const auto s = detail::spread_spectrum(n, condition_bound);
    return multiply(detail::scale_columns(u.matrix(), s, false),
                    conjugate_transpose(v.matrix()));
}

/// A -> T A T^T for a given unitary T (its coninverse is T^T).
inline ComplexMatrix scramble_consim(const ComplexMatrix& a, const UnitaryFactor& t) {
    if (!a.is_square() || t.dim() != a.rows())
        throw DimensionError("scramble_consim: transform and matrix sizes disagree");
    return multiply(multiply(t.matrix(), a), transpose(t.matrix()));
}

/// Seeded scramble A -> T A (conj T)^{-1}. Unitary transforms use the
/// coninverse T^T directly; general ones build T = U diag(s) V^* and its
/// coninverse conj(V) diag(1/s) U^T from the same factors, so no inverse is
/// ever computed numerically.
inline ComplexMatrix scramble_consim(const ComplexMatrix& a, const ScrambleSpec& spec) {
    if (!a.is_square())
        throw DimensionError("scramble_consim: matrix must be square");
    const Index n = a.rows();
    if (spec.transform_kind == TransformKind::unitary)
        return scramble_consim(a, random_unitary(n, spec.seed));
    detail::require_condition_bound(spec.condition_bound);
    if (n == 0) return a;
    std::mt19937_64 rng(spec.seed);
    const UnitaryFactor u = detail::unitary_from_gaussian(detail::gaussian(rng, n, n));
    const UnitaryFactor v = detail::unitary_from_gaussian(detail::gaussian(rng, n, n));
    const auto s = detail::spread_spectrum(n, spec.condition_bound);
    const ComplexMatrix t =
        multiply(detail::scale_columns(u.matrix(), s, false), conjugate_transpose(v.matrix()));
    const ComplexMatrix coninv =
        multiply(detail::scale_columns(conjugate(v.matrix()), s, true), transpose(u.matrix()));
    return multiply(multiply(t, a), coninv);
}

/// (A, B) -> (S A R, S B conj(R)) for given unitaries.
inline MatrixPair scramble_pair(const MatrixPair& p, const UnitaryFactor& s,
                                const UnitaryFactor& r) {
    if (s.dim() != p.rows() || r.dim() != p.cols())
        throw DimensionError("scramble_pair: transform and pair sizes disagree");
    return {multiply(multiply(s.matrix(), p.first), r.matrix()),
            multiply(multiply(s.matrix(), p.second), conjugate(r.matrix()))};
}

/// Seeded scramble (A, B) -> (S A R, S B conj(R)) with independent left and
/// right transforms drawn from one stream.
inline MatrixPair scramble_pair(const MatrixPair& p, const ScrambleSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const std::uint64_t left_seed = rng();
    const std::uint64_t right_seed = rng();
    if (spec.transform_kind == TransformKind::unitary)
        return scramble_pair(p, random_unitary(p.rows(), left_seed),
                             random_unitary(p.cols(), right_seed));
    detail::require_condition_bound(spec.condition_bound);
    const ComplexMatrix s = random_nonsingular(p.rows(), left_seed, spec.condition_bound);
    const ComplexMatrix r = random_nonsingular(p.cols(), right_seed, spec.condition_bound);
    return {multiply(multiply(s, p.first), r), multiply(multiply(s, p.second), conjugate(r))};
}

/// Index sequence of a square matrix from the alternating power chain
/// M_0 = I, M_k = A * conj(M_{k-1}): r_k = rank(M_{k-1}) - rank(M_k), emitted
/// while positive. Independent of any staircase computation. In relative
/// mode the rank cut for M_k is anchored to the product scale
/// sigma_max(A) * sigma_max(M_{k-1}), since an exactly-zero chain tail is
/// pure rounding noise at that magnitude; absolute cuts pass through.
inline std::vector<Index> consim_power_oracle(const ComplexMatrix& a, const Tolerance& tol = {}) {
    if (!a.is_square())
        throw DimensionError("consim_power_oracle: matrix must be square");
    staircase::detail::require_finite(a, "consim_power_oracle");
    const Index n = a.rows();
    std::vector<Index> r_seq;
    if (n == 0) return r_seq;

    const double a_scale = sigma_max(a);
    ComplexMatrix chain = ComplexMatrix::identity(n);
    Index prev_rank = n;
    double prev_scale = 1.0;
    while (prev_rank > 0) {
        chain = multiply(a, conjugate(chain));
        const auto sv = singular_values(chain);
        const double cut = tol.mode() == Tolerance::Mode::absolute
                               ? tol.value()
                               : tol.cut(a_scale * prev_scale, n, n);
        Index rank = 0;
        for (double s : sv)
            if (s > cut) ++rank;
        const Index r = prev_rank - rank;
        if (r < 0)
            throw ToleranceBreakdown(
                "consim_power_oracle: chain rank increased; the rank tolerance cannot "
                "separate the singular structure");
        if (r == 0) break;
        r_seq.push_back(r);
        prev_rank = rank;
        prev_scale = sv.empty() ? 0.0 : sv.front();
    }
    return r_seq;
}

/// A decomposition descriptor together with its assembled instance (matrix
/// for consimilarity descriptors, pair otherwise).
struct SuiteInstance {
    DecompositionDescriptor descriptor;
    ComplexMatrix matrix;
    MatrixPair pair;
};

namespace detail {

inline constexpr BlockKind pair_families[4] = {BlockKind::fg, BlockKind::ji, BlockKind::fgt,
                                               BlockKind::ij};

inline DecompositionDescriptor aggregate(ProblemKind kind,
                                         const std::vector<BlockDescriptor>& parts) {
    DecompositionDescriptor d;
    d.kind = kind;
    for (const BlockDescriptor& b : parts) {
        if (!d.blocks.empty() && d.blocks.back().kind == b.kind && d.blocks.back().n == b.n)
            ++d.blocks.back().multiplicity;
        else
            d.blocks.push_back(b);
    }
    return d;
}

} // namespace detail

/// Every nonempty multiset of singular blocks with total size parameter at
/// most max_total_size, assembled without a regular part. Consimilarity
/// suites draw from nilpotent blocks; pair suites from the four pair
/// families. Deterministic order.
inline std::vector<SuiteInstance> exhaustive_block_suite(Index max_total_size,
                                                         ProblemKind kind) {
    if (max_total_size < 0)
        throw InvalidValueError("exhaustive_block_suite: size bound must be nonnegative");
    std::vector<SuiteInstance> out;
    std::vector<BlockDescriptor> parts;

    auto emit = [&] {
        SuiteInstance inst;
        inst.descriptor = detail::aggregate(kind, parts);
        if (kind == ProblemKind::consimilarity)
            inst.matrix = assemble_matrix(inst.descriptor);
        else
            inst.pair = assemble_pair(inst.descriptor);
        out.push_back(std::move(inst));
    };

    if (kind == ProblemKind::consimilarity) {
        auto rec = [&](auto&& self, Index min_size, Index remaining) -> void {
            for (Index s = min_size; s <= remaining; ++s) {
                parts.push_back({BlockKind::jordan_zero, s, Complex{}, 1});
                emit();
                self(self, s, remaining - s);
                parts.pop_back();
            }
        };
        rec(rec, 1, max_total_size);
    } else {
        auto rec = [&](auto&& self, int min_fam, Index min_size, Index remaining) -> void {
            for (int f = min_fam; f < 4; ++f) {
                const Index start = f == min_fam ? min_size : 1;
                for (Index s = start; s <= remaining; ++s) {
                    parts.push_back({detail::pair_families[f], s, Complex{}, 1});
                    emit();
                    self(self, f, s, remaining - s);
                    parts.pop_back();
                }
            }
        };
        rec(rec, 0, 1, max_total_size);
    }
    return out;
}

} // namespace staircase::testgen
