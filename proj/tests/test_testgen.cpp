#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "staircase/blocks.hpp"
#include "staircase/consimilarity.hpp"
#include "staircase/testgen.hpp"

using namespace staircase;
using namespace staircase::testgen;

TEST_CASE("random unitary matrices") {
    SECTION("degenerate sizes") {
        CHECK(random_unitary(0, 1).dim() == 0);
        const UnitaryFactor u1 = random_unitary(1, 2);
        CHECK(std::abs(std::abs(u1.matrix()(0, 0)) - 1.0) <= 1e-15);
    }
    SECTION("unitarity across seeds and sizes") {
        for (std::uint64_t seed = 0; seed < 8; ++seed)
            for (Index n : {2, 4, 9}) {
                const UnitaryFactor u = random_unitary(n, seed);
                CHECK(u.dim() == n);
                CHECK(u.defect() <= 1e-13);
            }
    }
    SECTION("seeding is deterministic and distinguishing") {
        CHECK(random_unitary(4, 7).matrix() == random_unitary(4, 7).matrix());
        CHECK_FALSE(random_unitary(4, 7).matrix() == random_unitary(4, 8).matrix());
    }
}

TEST_CASE("random nonsingular matrices hit the requested condition number") {
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        for (double cond : {1.0, 10.0, 1000.0}) {
            const ComplexMatrix a = random_nonsingular(5, seed, cond);
            const auto sv = singular_values(a);
            const double ratio = sv.front() / sv.back();
            CHECK(ratio == Catch::Approx(cond).epsilon(0.05));
            // The construction pins the spectrum exactly to [1/sqrt(c), sqrt(c)].
            CHECK(sv.front() == Catch::Approx(std::sqrt(cond)).epsilon(1e-10));
        }
    CHECK(random_nonsingular(3, 9, 50.0) == random_nonsingular(3, 9, 50.0));
    CHECK_THROWS_AS(random_nonsingular(3, 0, 0.5), InvalidValueError);
}

TEST_CASE("scrambles preserve what they must") {
    const ComplexMatrix a = direct_sum(jordan(3), ComplexMatrix::identity(2));
    SECTION("identity transform is a no-op") {
        CHECK(scramble_consim(a, UnitaryFactor::identity(5)) == a);
    }
    SECTION("unitary scrambles preserve rank and norm") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const ComplexMatrix s =
                scramble_consim(a, ScrambleSpec{seed, TransformKind::unitary, 1.0});
            CHECK(rank_of(s) == rank_of(a));
            CHECK(frobenius_norm(s) == Catch::Approx(frobenius_norm(a)).epsilon(1e-12));
        }
    }
    SECTION("general scrambles preserve rank only") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const ComplexMatrix s =
                scramble_consim(a, ScrambleSpec{seed, TransformKind::general, 100.0});
            CHECK(rank_of(s) == rank_of(a));
        }
    }
    SECTION("pair scrambles preserve both ranks") {
        const MatrixPair p(direct_sum(F_block(2), jordan(2)),
                           direct_sum(G_block(2), ComplexMatrix::identity(2)));
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const MatrixPair s = scramble_pair(p, ScrambleSpec{seed, TransformKind::general, 30.0});
            CHECK(rank_of(s.first) == rank_of(p.first));
            CHECK(rank_of(s.second) == rank_of(p.second));
            CHECK(s.rows() == p.rows());
            CHECK(s.cols() == p.cols());
        }
        CHECK(scramble_pair(p, ScrambleSpec{3, TransformKind::unitary, 1.0}) ==
              scramble_pair(p, ScrambleSpec{3, TransformKind::unitary, 1.0}));
    }
    SECTION("scrambling is consimilarity, not similarity") {
        // T A conj(T)^-1 differs from T A T^-1 whenever T is complex.
        const UnitaryFactor t = random_unitary(3, 11);
        const ComplexMatrix left = multiply(t.matrix(), jordan(3));
        const ComplexMatrix consim = multiply(left, transpose(t.matrix()));
        CHECK(scramble_consim(jordan(3), t) == consim);
    }
}

TEST_CASE("power oracle computes deflation sizes by rank differences") {
    SECTION("nilpotent direct sums") {
        const ComplexMatrix golden =
            direct_sum(direct_sum(jordan(4), jordan(3)), jordan(2));
        CHECK(consim_power_oracle(golden) == std::vector<Index>{3, 3, 2, 1});
        CHECK(consim_power_oracle(direct_sum(jordan(4), jordan(2))) ==
              std::vector<Index>{2, 2, 1, 1});
        CHECK(consim_power_oracle(jordan(3)) == std::vector<Index>{1, 1, 1});
    }
    SECTION("nonsingular input yields an empty sequence") {
        CHECK(consim_power_oracle(ComplexMatrix::identity(4)).empty());
        CHECK(consim_power_oracle(ComplexMatrix(0, 0)).empty());
    }
    SECTION("oracle sees through general scrambles") {
        const ComplexMatrix a = scramble_consim(
            jordan(3), ScrambleSpec{17, TransformKind::general, 100.0});
        CHECK(consim_power_oracle(a) == std::vector<Index>{1, 1, 1});
    }
    SECTION("rectangular input is rejected") {
        CHECK_THROWS_AS(consim_power_oracle(ComplexMatrix(2, 3)), DimensionError);
    }
    SECTION("oracle agrees with the staircase on a scrambled mixed sum") {
        const ComplexMatrix base = direct_sum(
            direct_sum(jordan(2), jordan(2)),
            testgen::random_nonsingular(2, 3, 5.0));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ComplexMatrix a =
                scramble_consim(base, ScrambleSpec{seed, TransformKind::unitary, 1.0});
            CHECK(consim_power_oracle(a) == consim_regularize(a).r_seq);
        }
    }
}

TEST_CASE("exhaustive suite enumeration") {
    SECTION("counts at small size caps") {
        CHECK(exhaustive_block_suite(0, ProblemKind::consimilarity).empty());
        CHECK(exhaustive_block_suite(0, ProblemKind::mixed_pair).empty());
        // Nonempty multisets of jordan sizes with total <= 2: {1}, {1,1}, {2}.
        CHECK(exhaustive_block_suite(2, ProblemKind::consimilarity).size() == 3);
        // Partition counts p(1..6) sum to 29.
        CHECK(exhaustive_block_suite(6, ProblemKind::consimilarity).size() == 29);
        // Four families, one block of size 1 each.
        CHECK(exhaustive_block_suite(1, ProblemKind::mixed_pair).size() == 4);
    }
    SECTION("instances are valid, deterministic, and deduplicated") {
        const auto suite = exhaustive_block_suite(4, ProblemKind::mixed_pair);
        const auto again = exhaustive_block_suite(4, ProblemKind::mixed_pair);
        REQUIRE(suite.size() == again.size());
        std::set<std::string> seen;
        for (std::size_t i = 0; i < suite.size(); ++i) {
            CHECK(suite[i].descriptor == again[i].descriptor);
            CHECK(suite[i].pair == again[i].pair);
            CHECK(assemble_pair(suite[i].descriptor) == suite[i].pair);
            std::string key;
            for (const BlockDescriptor& b : suite[i].descriptor.blocks) {
                key += std::to_string(static_cast<int>(b.kind)) + ":" +
                       std::to_string(b.n) + "x" + std::to_string(b.multiplicity) + ";";
            }
            CHECK(seen.insert(key).second);
        }
    }
    SECTION("consimilarity instances assemble their descriptors") {
        for (const auto& inst : exhaustive_block_suite(4, ProblemKind::consimilarity)) {
            CHECK(assemble_matrix(inst.descriptor) == inst.matrix);
            CHECK(inst.pair.rows() == 0);
        }
    }
}
