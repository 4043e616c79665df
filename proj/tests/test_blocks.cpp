#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ddz/blocks.hpp"
#include "ddz/harness.hpp"
#include "exact.hpp"
#include "support.hpp"

using ddz::BlockInstance;
using ddz::BlockTheorem;
using ddz::ComplexMatrix;
using ddz::DualMatrix;
using ref::mat;

namespace {

DualMatrix int_dual(ddz::IntRng& rng, Eigen::Index r, Eigen::Index c) { return rng.dual(r, c, 2); }

DualMatrix zeros(Eigen::Index r, Eigen::Index c) { return DualMatrix::zero(r, c); }

BlockInstance instance(BlockTheorem t, std::map<std::string, DualMatrix> blocks) {
    return {t, std::move(blocks)};
}

// compares a closed form with the exact reference for the assembled matrix
void check_against_exact(const BlockInstance& inst, double tol = 1e-9) {
    const DualMatrix m = ddz::assemble_instance(inst);
    REQUIRE(ddz::dual_exists(m).exists);
    const DualMatrix got = ddz::evaluate_closed_form(inst);
    CHECK(ref::err(got, exact::dual_drazin(m)) < tol);
}

std::vector<ddz::Theorem> block_theorems() {
    std::vector<ddz::Theorem> out;
    for (auto t : ddz::all_theorems()) {
        if (ddz::as_block(t) && t != ddz::Theorem::BipartiteDual) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("theorem names round-trip") {
    for (auto t : {BlockTheorem::Cline, BlockTheorem::TriUpper, BlockTheorem::TriLower,
                   BlockTheorem::SumPQ0, BlockTheorem::AbioRight, BlockTheorem::AbioLeft,
                   BlockTheorem::AbcoRight, BlockTheorem::AbcoLeft, BlockTheorem::Bipartite}) {
        CHECK(ddz::block_theorem_from_string(ddz::to_string(t)) == t);
    }
    CHECK_FALSE(ddz::block_theorem_from_string("ABCD"));
}

TEST_CASE("Cline's formula") {
    const auto i3 = DualMatrix::identity(3);
    CHECK(ref::err(ddz::cline(i3, i3), i3) < 1e-15);
    CHECK(ddz::cline(i3, zeros(3, 3)).norm() == 0.0);

    ddz::IntRng rng(41);
    for (int t = 0; t < 50; ++t) {
        const DualMatrix a = int_dual(rng, 3, 2);
        const DualMatrix b = int_dual(rng, 2, 3);
        if (!ddz::dual_exists(b * a).exists) continue;
        const DualMatrix ab = a * b;
        REQUIRE(ddz::dual_exists(ab).exists);
        CHECK(ref::err(ddz::cline(a, b), exact::dual_drazin(ab)) < 1e-9);
    }
}

TEST_CASE("Cline's formula with B = I is the dual Drazin inverse") {
    ddz::IntRng rng(42);
    for (int t = 0; t < 100; ++t) {
        const DualMatrix a = ddz::gen_dcz(rng, 1 + t % 6, true);
        const auto id = DualMatrix::identity(a.rows());
        CHECK(ref::err(ddz::cline(a, id), ddz::dual_drazin(a).inverse) < 1e-9);
    }
}

TEST_CASE("block triangular") {
    ddz::IntRng rng(43);
    const DualMatrix a = ddz::gen_dcz(rng, 3, true);
    const DualMatrix d = ddz::gen_dcz(rng, 2, true);

    const DualMatrix diag = ddz::tri_drazin(a, zeros(3, 2), d, ddz::Orientation::Upper);
    const DualMatrix expect = ddz::block_diag({ddz::dual_drazin(a).inverse, ddz::dual_drazin(d).inverse});
    CHECK(ref::err(diag, expect) < 1e-12);

    // A invertible and D = 0: only A^{2D} B survives in the corner
    const DualMatrix ai(mat({{2, 1}, {1, 1}}), mat({{1, 0}, {0, -1}}));
    const DualMatrix b = int_dual(rng, 2, 2);
    const DualMatrix w = ddz::tri_drazin(ai, b, zeros(2, 2), ddz::Orientation::Upper);
    const DualMatrix aid = ddz::dual_drazin(ai).inverse;
    CHECK(ref::err(w.block(0, 2, 2, 2), aid * aid * b) < 1e-13);
    check_against_exact(instance(BlockTheorem::TriUpper, {{"A", ai}, {"B", b}, {"D", zeros(2, 2)}}));

    const DualMatrix lower = ddz::tri_drazin(ai, b, zeros(2, 2), ddz::Orientation::Lower);
    CHECK(ref::err(lower.block(2, 0, 2, 2), aid * aid * b) < 1e-13);
}

TEST_CASE("block triangular with an assembled matrix outside the set") {
    // A = D = 0 and B = 2ε: both diagonal blocks are fine, the whole is not
    const DualMatrix z = zeros(1, 1);
    const auto inst = instance(BlockTheorem::TriUpper, {{"A", z}, {"B", DualMatrix::eps(mat({{2}}))}, {"D", z}});
    CHECK(ddz::check_hypotheses(inst).all_pass());
    CHECK_FALSE(ddz::dual_exists(ddz::assemble_instance(inst)).exists);
    CHECK_THROWS_AS(ddz::evaluate_closed_form(inst), ddz::NotDualDrazinInvertible);
    CHECK_NOTHROW(ddz::evaluate_closed_form(inst, {}, false));
}

TEST_CASE("sum with PQ = 0") {
    ddz::IntRng rng(44);
    const DualMatrix p = ddz::gen_dcz(rng, 4, true);
    CHECK(ref::err(ddz::sum_pq_zero(p, zeros(4, 4)), ddz::dual_drazin(p).inverse) < 1e-12);
    CHECK(ref::err(ddz::sum_pq_zero(zeros(4, 4), p), ddz::dual_drazin(p).inverse) < 1e-12);

    const DualMatrix n = ddz::gen_dcz(rng, 2, true);
    const DualMatrix m = ddz::gen_dcz(rng, 3, true);
    const DualMatrix pd = ddz::block_diag({n, zeros(3, 3)});
    const DualMatrix qd = ddz::block_diag({zeros(2, 2), m});
    const auto inst = instance(BlockTheorem::SumPQ0, {{"P", pd}, {"Q", qd}});
    CHECK(ddz::check_hypotheses(inst, {}, true).all_pass());
    check_against_exact(inst);
}

TEST_CASE("[[A, B], [I, 0]]") {
    ddz::IntRng rng(45);
    const DualMatrix b = ddz::gen_dcz(rng, 3, true);
    const DualMatrix z = zeros(3, 3);
    for (auto side : {ddz::Side::Right, ddz::Side::Left}) {
        const DualMatrix got = ddz::abio_drazin(z, b, side);
        const ddz::DualSpectral sb(b);
        CHECK(ref::err(got, ddz::assemble(z, sb.e(), sb.drazin(), z)) < 1e-12);
    }

    // nilpotent A with B = I: the inverse is [[0, I], [I, -A]]
    const DualMatrix a(mat({{0, 1}, {0, 0}}), mat({{0, 3}, {0, 0}}));
    const DualMatrix i2 = DualMatrix::identity(2);
    const DualMatrix expect = ddz::assemble(zeros(2, 2), i2, i2, -a);
    for (auto t : {BlockTheorem::AbioRight, BlockTheorem::AbioLeft}) {
        const auto inst = instance(t, {{"A", a}, {"B", i2}});
        CHECK(ref::err(ddz::evaluate_closed_form(inst), expect) < 1e-14);
        check_against_exact(inst);
    }
}

TEST_CASE("[[A, B], [C, 0]]") {
    ddz::IntRng rng(46);
    const DualMatrix a = ddz::gen_dcz(rng, 3, true);
    const DualMatrix b = int_dual(rng, 3, 2);
    const DualMatrix ad = ddz::dual_drazin(a).inverse;
    for (auto t : {BlockTheorem::AbcoRight, BlockTheorem::AbcoLeft}) {
        const auto inst = instance(t, {{"A", a}, {"B", b}, {"C", zeros(2, 3)}});
        const auto report = ddz::check_hypotheses(inst);
        CHECK(report.all_pass());
        const DualMatrix expect = ddz::assemble(ad, ad * ad * b, zeros(2, 3), zeros(2, 2));
        CHECK(ref::err(ddz::evaluate_closed_form(inst, {}, false), expect) < 1e-12);
    }

    // A = 0 reduces to the bipartite form
    const DualMatrix bb = int_dual(rng, 3, 3);
    const DualMatrix cc = int_dual(rng, 3, 3);
    const DualMatrix z = zeros(3, 3);
    for (auto t : {BlockTheorem::AbcoRight, BlockTheorem::AbcoLeft}) {
        const auto inst = instance(t, {{"A", z}, {"B", bb}, {"C", cc}});
        CHECK(ref::err(ddz::evaluate_closed_form(inst), ddz::bipartite_drazin(bb, cc)) < 1e-12);
        check_against_exact(inst);
    }
}

TEST_CASE("bipartite") {
    const DualMatrix i3 = DualMatrix::identity(3);
    const DualMatrix z = zeros(3, 3);
    const DualMatrix m = ddz::assemble(z, i3, i3, z);
    CHECK(ref::err(ddz::bipartite_drazin(i3, i3), m) < 1e-15);
    CHECK(ddz::bipartite_drazin(z, i3).norm() == 0.0);

    ddz::IntRng rng(47);
    for (int t = 0; t < 20; ++t) {
        const auto inst = instance(BlockTheorem::Bipartite, {{"B", int_dual(rng, 3, 3)}, {"C", int_dual(rng, 3, 3)}});
        if (!ddz::dual_exists(ddz::assemble_instance(inst)).exists) continue;
        check_against_exact(inst);
    }
}

TEST_CASE("hypothesis reports") {
    ddz::IntRng rng(48);
    const DualMatrix a = ddz::gen_dcz(rng, 3, true);
    const auto ok = ddz::check_hypotheses(
        instance(BlockTheorem::AbcoRight, {{"A", a}, {"B", int_dual(rng, 3, 2)}, {"C", zeros(2, 3)}}));
    CHECK(ok.all_pass());
    for (const auto& c : ok.checks) {
        if (c.name.find("in DC_z") == std::string::npos) CHECK(c.residual == 0.0);
    }

    const DualMatrix i3 = DualMatrix::identity(3);
    const auto bad = ddz::check_hypotheses(instance(BlockTheorem::AbioRight, {{"A", i3}, {"B", i3}}));
    CHECK_FALSE(bad.all_pass());
    bool seen = false;
    for (const auto& c : bad.checks) {
        if (c.name == "A A^e B = 0") {
            seen = true;
            CHECK_FALSE(c.pass);
            CHECK(c.residual == doctest::Approx(std::sqrt(3.0)));
        }
    }
    CHECK(seen);
    CHECK_FALSE(bad.failures().empty());
    CHECK_THROWS_AS(ddz::evaluate_closed_form(instance(BlockTheorem::AbioRight, {{"A", i3}, {"B", i3}})),
                    ddz::HypothesisViolated);

    CHECK_THROWS_AS(ddz::check_hypotheses(instance(BlockTheorem::AbioRight, {{"A", i3}})),
                    std::exception);
    CHECK_THROWS_AS(ddz::check_hypotheses(
                        instance(BlockTheorem::AbioRight, {{"A", i3}, {"B", zeros(2, 2)}})),
                    ddz::ShapeMismatch);
}

TEST_CASE("series beyond the index vanish") {
    // the block series stop at the standard index because B^π B^i = 0 from there on
    ddz::IntRng rng(49);
    for (int t = 0; t < 50; ++t) {
        const ddz::DualSpectral s(ddz::gen_dcz(rng, 2 + t % 5, true));
        const int k = s.index();
        for (int i = k; i <= 2 * k + 2; ++i) {
            CHECK((s.pi() * s.pow(i)).norm() <= 1e-9 * std::max(1.0, s.pow(i).norm()));
        }
    }
}

TEST_CASE("closed forms agree with the exact reference on generated instances") {
    for (auto theorem : block_theorems()) {
        CAPTURE(ddz::cli_name(theorem));
        ddz::GenConfig cfg;
        cfg.theorem = theorem;
        cfg.seed = 4242;
        cfg.dim_min = 1;
        cfg.dim_max = 3;
        for (int trial = 0; trial < 100; ++trial) {
            const ddz::Case c = ddz::gen_instance(cfg, trial);
            const auto& inst = std::get<BlockInstance>(c.payload);
            CHECK(ddz::check_hypotheses(inst).all_pass());
            const DualMatrix m = ddz::assemble_instance(inst);
            const DualMatrix got = ddz::evaluate_closed_form(inst);
            CHECK(ref::err(got, exact::dual_drazin(m)) < 1e-8);
            const auto r = ddz::defining_residuals(m, got, exact::index(m.st));
            for (double v : r) CHECK(v < 1e-8);
        }
    }
}

TEST_CASE("violating instances are rejected before evaluation") {
    for (auto theorem : block_theorems()) {
        if (!ddz::supports_violation(theorem)) continue;
        CAPTURE(ddz::cli_name(theorem));
        ddz::GenConfig cfg;
        cfg.theorem = theorem;
        cfg.seed = 99;
        cfg.violate = true;
        for (int trial = 0; trial < 30; ++trial) {
            const ddz::Case c = ddz::gen_instance(cfg, trial);
            const auto& inst = std::get<BlockInstance>(c.payload);
            CHECK_FALSE(ddz::check_hypotheses(inst).all_pass());
            CHECK_THROWS_AS(ddz::evaluate_closed_form(inst), ddz::HypothesisViolated);
        }
    }
}
