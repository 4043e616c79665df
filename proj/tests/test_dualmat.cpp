#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ddz/harness.hpp"
#include "exact.hpp"
#include "support.hpp"

using ddz::ComplexMatrix;
using ddz::DualMatrix;
using ref::mat;

TEST_CASE("dmul") {
    const DualMatrix x(mat({{1, 2}, {3, 4}}), mat({{0, 1}, {1, 0}}));
    CHECK(dmul(DualMatrix::identity(2), x) == x);
    CHECK(dmul(x, DualMatrix::identity(2)) == x);

    const DualMatrix e = DualMatrix::eps(ComplexMatrix::Identity(3, 3));
    CHECK(dmul(e, e) == DualMatrix::zero(3, 3));

    CHECK_THROWS_AS(dmul(DualMatrix::zero(2, 3), DualMatrix::zero(2, 3)), ddz::ShapeMismatch);
    CHECK_THROWS_AS(DualMatrix(mat({{1, 2}}), mat({{1}, {2}})), ddz::ShapeMismatch);
}

TEST_CASE("dmul agrees with the block embedding") {
    std::mt19937_64 g(21);
    for (int t = 0; t < 100; ++t) {
        const DualMatrix x = ref::random_dual(g, 1 + t % 4, 2 + t % 3);
        const DualMatrix y = ref::random_dual(g, x.cols(), 1 + t % 5);
        CHECK(ref::err(dmul(x, y), ref::phi_mul(x, y)) < 1e-13);
    }
}

TEST_CASE("dpow") {
    const DualMatrix x(mat({{0, 1}, {0, 0}}), ComplexMatrix::Identity(2, 2));
    CHECK(dpow(x, 0) == DualMatrix::identity(2));
    CHECK(dpow(x, 1) == x);
    const DualMatrix x2 = dpow(x, 2);
    CHECK(x2.st == ComplexMatrix::Zero(2, 2));
    CHECK(x2.inf == mat({{0, 2}, {0, 0}}));
    CHECK_THROWS(dpow(x, -1));
    CHECK_THROWS_AS(dpow(DualMatrix::zero(2, 3), 2), ddz::ShapeMismatch);
}

TEST_CASE("dpow infinitesimal part equals the sum of mixed products") {
    std::mt19937_64 g(22);
    for (int n = 1; n <= 4; ++n) {
        const DualMatrix x = ref::random_dual(g, n, n);
        for (int k = 0; k <= 6; ++k) {
            // Σ_{i=1}^{k} A^{k-i} A0 A^{i-1}, written out term by term
            ComplexMatrix sum = ComplexMatrix::Zero(n, n);
            for (int i = 1; i <= k; ++i) {
                ComplexMatrix term = ComplexMatrix::Identity(n, n);
                for (int j = 0; j < k - i; ++j) term = term * x.st;
                term = term * x.inf;
                for (int j = 0; j < i - 1; ++j) term = term * x.st;
                sum += term;
            }
            const DualMatrix p = dpow(x, k);
            CHECK(ref::err(p.inf, sum) < 1e-12 * std::max(1.0, sum.norm()));
            CHECK(ref::err(ddz::power_inf_sum(x, k), sum) < 1e-12 * std::max(1.0, sum.norm()));
        }
    }
}

TEST_CASE("block embedding") {
    const ComplexMatrix p = ddz::phi_embed(DualMatrix::eps(ComplexMatrix::Identity(2, 2)));
    CHECK(p.rows() == 4);
    CHECK(p == mat({{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}));

    std::mt19937_64 g(23);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 6;
        const DualMatrix x = ref::random_dual(g, n, n);
        const DualMatrix y = ref::random_dual(g, n, n);
        const ComplexMatrix lhs = ddz::phi_embed(x * y);
        const ComplexMatrix rhs = ddz::phi_embed(x) * ddz::phi_embed(y);
        CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
    }
}

TEST_CASE("ranks") {
    const DualMatrix e3 = DualMatrix::eps(ComplexMatrix::Identity(3, 3));
    CHECK(rank_std(e3) == 0);
    CHECK(rank_dual(e3) == 3);
    CHECK(rank_std(DualMatrix::identity(3)) == 3);
    CHECK(rank_dual(DualMatrix::identity(3)) == 3);
    CHECK(rank_std(DualMatrix(mat({{1, 1}, {1, 1}}))) == 1);

    const DualMatrix mixed(mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}}));
    CHECK(rank_std(mixed) == 1);
    CHECK(rank_dual(mixed) == 2);
    CHECK(rank_dual(DualMatrix::zero(3, 3)) == 0);
}

TEST_CASE("rank_dual matches exact elimination") {
    ddz::IntRng rng(24);
    for (int t = 0; t < 200; ++t) {
        const DualMatrix x = gen_rank_instance(rng, 1 + t % 6);
        const ddz::SmithRank s = ddz::smith_rank_oracle(x);
        CHECK(rank_std(x) == s.r);
        CHECK(rank_dual(x) == s.r + s.s);
    }
}

TEST_CASE("indices") {
    const auto nil = indices(DualMatrix(mat({{0, 1}, {0, 0}})));
    CHECK(nil.ind_std == 2);
    CHECK(nil.ind_phi == 2);
    REQUIRE(nil.ind_dual);
    CHECK(*nil.ind_dual == 2);

    const auto inv = indices(DualMatrix(mat({{2, 1}, {0, 3}}), mat({{1, 1}, {1, 1}})));
    CHECK(inv.ind_std == 0);
    CHECK(inv.ind_phi == 0);
    CHECK(*inv.ind_dual == 0);

    const auto eps = indices(DualMatrix::eps(mat({{1}})));
    CHECK(eps.ind_std == 1);
    CHECK(*eps.ind_dual == 2);
    CHECK(eps.ind_phi == 2);
}

TEST_CASE("embedding index lies between the standard index and twice it") {
    ddz::IntRng rng(25);
    for (int t = 0; t < 200; ++t) {
        const DualMatrix x = ddz::gen_dcz(rng, 1 + t % 8, t % 3 != 0);
        const auto r = indices(x);
        CHECK(r.ind_std == exact::index(x.st));
        CHECK(r.ind_phi == exact::index(ddz::phi_embed(x)));
        CHECK(r.ind_std <= r.ind_phi);
        CHECK(r.ind_phi <= 2 * r.ind_std);
    }
}
