#include <catch_amalgamated.hpp>

#include <limits>
#include <random>

#include "staircase/blocks.hpp"
#include "staircase/compress.hpp"
#include "staircase/testgen.hpp"

using namespace staircase;

namespace {

constexpr double kTight = 1e-12;

ComplexMatrix random_of_rank(std::mt19937_64& rng, Index m, Index n, Index r) {
    // Exact-rank construction: unitary * (nonsingular_r ⊕ 0) * unitary.
    const ComplexMatrix core =
        direct_sum(testgen::random_nonsingular(r, rng(), 10.0), ComplexMatrix(m - r, n - r));
    const UnitaryFactor u = testgen::random_unitary(m, rng());
    const UnitaryFactor v = testgen::random_unitary(n, rng());
    return u.matrix() * core * v.matrix();
}

} // namespace

TEST_CASE("singular values") {
    SECTION("identity") {
        const auto sv = singular_values(ComplexMatrix::identity(3));
        REQUIRE(sv.size() == 3);
        for (double s : sv) CHECK_THAT(s, Catch::Matchers::WithinAbs(1.0, kTight));
    }
    SECTION("nonincreasing order") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        ComplexMatrix a(4, 6);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 6; ++j) a(i, j) = Complex(nd(rng), nd(rng));
        const auto sv = singular_values(a);
        REQUIRE(sv.size() == 4);
        for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] <= sv[i - 1]);
    }
    SECTION("zero dimensions give an empty spectrum") {
        CHECK(singular_values(ComplexMatrix(0, 5)).empty());
        CHECK(singular_values(ComplexMatrix(5, 0)).empty());
        CHECK(sigma_max(ComplexMatrix(0, 0)) == 0.0);
        CHECK(sigma_min(ComplexMatrix(0, 0)) == std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("svd reconstruction") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<Index> dim(0, 6);
        const Index m = dim(rng);
        const Index n = dim(rng);
        ComplexMatrix a(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) a(i, j) = Complex(nd(rng), nd(rng));
        const SvdResult f = svd(a);
        REQUIRE(f.u.rows() == m);
        REQUIRE(f.v.rows() == n);
        ComplexMatrix us = f.u.block(0, 0, m, static_cast<Index>(f.singular_values.size()));
        for (Index j = 0; j < us.cols(); ++j)
            for (Index i = 0; i < m; ++i)
                us(i, j) *= f.singular_values[static_cast<std::size_t>(j)];
        const ComplexMatrix rec =
            us * conjugate_transpose(f.v).block(0, 0, us.cols(), n);
        CHECK(frobenius_norm(rec - a) <= kTight * (1.0 + frobenius_norm(a)));
        CHECK(UnitaryFactor(f.u).defect() <= kTight);
        CHECK(UnitaryFactor(f.v).defect() <= kTight);
    }
}

TEST_CASE("rank") {
    CHECK(rank_of(ComplexMatrix::identity(3)) == 3);
    CHECK(rank_of(ComplexMatrix::zeros(2, 5)) == 0);
    CHECK(rank_of(ComplexMatrix(0, 4)) == 0);

    // Size-4 nilpotent canonical block: spectrum (1,1,1,0), rank 3.
    CHECK(rank_of(jordan(4, 0.0)) == 3);

    SECTION("non-finite input is rejected") {
        ComplexMatrix a(2, 2);
        a(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
        CHECK_THROWS_AS(rank_of(a), InvalidValueError);
        CHECK_THROWS_AS(row_compress(a), InvalidValueError);
        CHECK_THROWS_AS(column_compress(a), InvalidValueError);
    }

    SECTION("invariant under unitary factors") {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<Index> dim(1, 7);
        for (int trial = 0; trial < 20; ++trial) {
            const Index m = dim(rng);
            const Index n = dim(rng);
            const Index r = std::uniform_int_distribution<Index>(0, std::min(m, n))(rng);
            const ComplexMatrix a = random_of_rank(rng, m, n, r);
            CHECK(rank_of(a) == r);
            const UnitaryFactor s = testgen::random_unitary(m, rng());
            CHECK(rank_of(s.matrix() * a) == r);
        }
    }
}

TEST_CASE("row compression") {
    SECTION("zero matrix") {
        const RowCompression rc = row_compress(ComplexMatrix::zeros(3, 3));
        CHECK(rc.zero_rows == 3);
        CHECK(rc.rest == ComplexMatrix(0, 3));
        CHECK(rc.left.dim() == 3);
    }
    SECTION("full-rank matrix compresses nothing") {
        const RowCompression rc = row_compress(ComplexMatrix::identity(3));
        CHECK(rc.zero_rows == 0);
        CHECK(rc.rest.rows() == 3);
        CHECK(UnitaryFactor(rc.rest).defect() <= 1e-10);
    }
    SECTION("size-2 nilpotent block") {
        const RowCompression rc = row_compress(jordan(2, 0.0));
        CHECK(rc.zero_rows == 1);
        REQUIRE(rc.rest.rows() == 1);
        CHECK_THAT(frobenius_norm(rc.rest), Catch::Matchers::WithinAbs(1.0, kTight));
    }
    SECTION("zero-dimension inputs") {
        const RowCompression none = row_compress(ComplexMatrix(0, 4));
        CHECK(none.zero_rows == 0);
        CHECK(none.rest == ComplexMatrix(0, 4));
        const RowCompression all = row_compress(ComplexMatrix(4, 0));
        CHECK(all.zero_rows == 4);
        CHECK(all.rest == ComplexMatrix(0, 0));
        CHECK(all.left.dim() == 4);
    }
    SECTION("reassembly bound and unitarity") {
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<Index> dim(0, 7);
        for (int trial = 0; trial < 30; ++trial) {
            const Index m = dim(rng);
            const Index n = dim(rng);
            const Index r = std::min(m, n) > 0
                                ? std::uniform_int_distribution<Index>(0, std::min(m, n))(rng)
                                : 0;
            const ComplexMatrix a = random_of_rank(rng, m, n, r);
            const Tolerance tol;
            const RowCompression rc = row_compress(a, tol);
            CHECK(rc.zero_rows == m - r);
            CHECK(rc.left.defect() <= 1e-12 * std::max<Index>(m, 1));
            const ComplexMatrix rebuilt =
                vstack(ComplexMatrix::zeros(rc.zero_rows, n), rc.rest);
            const double cut = tol.cut(sigma_max(a), m, n);
            CHECK(frobenius_norm(rc.left.matrix() * a - rebuilt) <=
                  10.0 * cut * std::sqrt(static_cast<double>(std::max<Index>(m * n, 1))));
        }
    }
}

TEST_CASE("column compression") {
    SECTION("zero matrix keeps no columns") {
        const ColumnCompression cc = column_compress(ComplexMatrix::zeros(2, 4));
        CHECK(cc.rank == 0);
        CHECK(cc.rest == ComplexMatrix(2, 0));
        CHECK(cc.right.dim() == 4);
    }
    SECTION("identity keeps everything") {
        const ColumnCompression cc = column_compress(ComplexMatrix::identity(2));
        CHECK(cc.rank == 2);
        CHECK(cc.rest.cols() == 2);
    }
    SECTION("wide rank-2 block") {
        // 2x3 with two independent rows: transpose of the size-3 diagonal-ones block.
        const ColumnCompression cc = column_compress(transpose(G_block(3)));
        CHECK(cc.rank == 2);
        CHECK(cc.rest.rows() == 2);
        CHECK(cc.rest.cols() == 2);
    }
    SECTION("zero-dimension inputs") {
        const ColumnCompression cc = column_compress(ComplexMatrix(0, 3));
        CHECK(cc.rank == 0);
        CHECK(cc.rest == ComplexMatrix(0, 0));
        CHECK(cc.right.dim() == 3);
        const ColumnCompression cc2 = column_compress(ComplexMatrix(3, 0));
        CHECK(cc2.rank == 0);
        CHECK(cc2.rest == ComplexMatrix(3, 0));
        CHECK(cc2.right.dim() == 0);
    }
    SECTION("reassembly bound") {
        std::mt19937_64 rng(29);
        std::uniform_int_distribution<Index> dim(0, 7);
        for (int trial = 0; trial < 30; ++trial) {
            const Index m = dim(rng);
            const Index n = dim(rng);
            const Index r = std::min(m, n) > 0
                                ? std::uniform_int_distribution<Index>(0, std::min(m, n))(rng)
                                : 0;
            const ComplexMatrix b = random_of_rank(rng, m, n, r);
            const Tolerance tol;
            const ColumnCompression cc = column_compress(b, tol);
            CHECK(cc.rank == r);
            CHECK(cc.right.defect() <= 1e-12 * std::max<Index>(n, 1));
            const ComplexMatrix rebuilt = hstack(cc.rest, ComplexMatrix::zeros(m, n - r));
            const double cut = tol.cut(sigma_max(b), m, n);
            CHECK(frobenius_norm(b * cc.right.matrix() - rebuilt) <=
                  10.0 * cut * std::sqrt(static_cast<double>(std::max<Index>(m * n, 1))));
        }
    }
}
