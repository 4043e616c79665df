#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "ddz/harness.hpp"
#include "support.hpp"

using ddz::ComplexMatrix;
using ddz::DualMatrix;
using ddz::Theorem;
using ref::mat;

namespace {

ddz::GenConfig config(Theorem t, std::uint64_t seed, int trials = 100) {
    ddz::GenConfig cfg;
    cfg.theorem = t;
    cfg.seed = seed;
    cfg.trials = trials;
    return cfg;
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("ddz-harness-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("exact rank oracle") {
    const auto e = ddz::smith_rank_oracle(DualMatrix::eps(ComplexMatrix::Identity(3, 3)));
    CHECK(e.r == 0);
    CHECK(e.s == 3);

    const auto d = ddz::smith_rank_oracle(DualMatrix(mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}),
                                                     mat({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}})));
    CHECK(d.r == 1);
    CHECK(d.s == 1);

    // the unit pivot clears both ε-entries: the remainder is -21ε² = 0
    const DualMatrix cleared(mat({{1, 0}, {0, 0}}), mat({{5, 7}, {3, 0}}));
    const auto c = ddz::smith_rank_oracle(cleared);
    CHECK(c.r == 1);
    CHECK(c.s == 0);
    CHECK(rank_dual(cleared) == 1);

    CHECK_THROWS_AS(ddz::smith_rank_oracle(DualMatrix(mat({{0.5}}))), ddz::InexactInput);
}

TEST_CASE("seeds") {
    CHECK(ddz::splitmix64(0) != ddz::splitmix64(1));
    CHECK(ddz::trial_seed(7, 3) == ddz::trial_seed(7, 3));
    CHECK(ddz::trial_seed(7, 3) != ddz::trial_seed(7, 4));
    CHECK(ddz::trial_seed(7, 3) != ddz::trial_seed(8, 3));

    ddz::IntRng a(5), b(5);
    CHECK(a.dual(3, 3, 2) == b.dual(3, 3, 2));
    for (int i = 0; i < 100; ++i) {
        const int u = a.uniform(-2, 2);
        CHECK(u >= -2);
        CHECK(u <= 2);
        const auto z = a.unit();
        CHECK(std::abs(z) == 1.0);
    }
}

TEST_CASE("generation is deterministic") {
    for (Theorem t : ddz::all_theorems()) {
        CAPTURE(ddz::cli_name(t));
        const auto cfg = config(t, 1234);
        for (int trial = 0; trial < 5; ++trial) {
            CHECK(ddz::case_to_json(ddz::gen_instance(cfg, trial)) ==
                  ddz::case_to_json(ddz::gen_instance(cfg, trial)));
        }
        CHECK(ddz::case_to_json(ddz::gen_instance(cfg, 2)) !=
              ddz::case_to_json(ddz::gen_instance(config(t, 1235), 2)));
    }

    const auto cfg = config(Theorem::AbcoLeft, 9, 20);
    CHECK(ddz::summary_json(ddz::fuzz(cfg)) == ddz::summary_json(ddz::fuzz(cfg)));
}

TEST_CASE("first two trials hit the dimension bounds") {
    auto cfg = config(Theorem::AbioRight, 3);
    cfg.dim_min = 2;
    cfg.dim_max = 5;
    const auto first = std::get<ddz::BlockInstance>(ddz::gen_instance(cfg, 0).payload);
    const auto second = std::get<ddz::BlockInstance>(ddz::gen_instance(cfg, 1).payload);
    CHECK(first.at("A").rows() == 2);
    CHECK(second.at("A").rows() == 5);

    cfg.dim_min = 0;
    CHECK_THROWS(ddz::gen_instance(cfg, 0));
    cfg.dim_min = 3;
    cfg.dim_max = 2;
    CHECK_THROWS(ddz::gen_instance(cfg, 0));
    CHECK_THROWS(ddz::gen_instance([] {
        auto c = config(Theorem::Cline, 1);
        c.violate = true;
        return c;
    }(), 0));
}

TEST_CASE("constructed conditions hold exactly") {
    for (int trial = 0; trial < 50; ++trial) {
        const auto sum = ddz::gen_instance(config(Theorem::SumPQ0, 10), trial);
        const auto& inst = std::get<ddz::BlockInstance>(sum.payload);
        CHECK((inst.at("P") * inst.at("Q")).norm() == 0.0);

        const auto ds = ddz::gen_instance(config(Theorem::DoubleStar, 11), trial);
        const auto& s = std::get<ddz::DoubleStar>(std::get<ddz::GraphSpec>(ds.payload));
        CHECK((s.w.transpose() * s.v).norm() == 0.0);

        const auto dls = ddz::gen_instance(config(Theorem::DLinkedStars, 12), trial);
        const auto& l = std::get<ddz::DLinkedStars>(std::get<ddz::GraphSpec>(dls.payload));
        for (size_t i = 0; i < l.x.size(); ++i) CHECK((l.x[i].transpose() * l.y[i]).norm() == 0.0);

        const auto bc0 = ddz::gen_instance(config(Theorem::WindmillBC0, 13), trial);
        const auto wb = ddz::windmill_blocks(std::get<ddz::DutchWindmill>(std::get<ddz::GraphSpec>(bc0.payload)));
        CHECK((wb.c * wb.b).norm() == 0.0);
    }
}

TEST_CASE("membership generator") {
    ddz::IntRng rng(14);
    for (int t = 0; t < 100; ++t) {
        const bool member = t % 2 == 0;
        const DualMatrix x = ddz::gen_dcz(rng, 2 + t % 7, member);
        CHECK(ddz::dual_exists(x).exists == member);
        CHECK(ddz::smith_rank_oracle(x).r == rank_std(x));
    }
}

TEST_CASE("fuzzing Cline's formula") {
    const auto report = ddz::fuzz(config(Theorem::Cline, 1));
    CHECK(report.passed == 100);
    CHECK(report.expected == 100);
    CHECK(report.evaluated == 100);
    CHECK(report.max_error <= 1e-9);
    CHECK(report.max_residual <= 1e-8);
}

TEST_CASE("fuzzing over the full dimension range") {
    auto cfg = config(Theorem::AbioRight, 2);
    cfg.dim_min = 1;
    cfg.dim_max = 6;
    const auto report = ddz::fuzz(cfg);
    CHECK(report.passed == 100);
    CHECK(report.max_error <= 1e-8);
}

TEST_CASE("violation mode never evaluates") {
    for (Theorem t : ddz::all_theorems()) {
        if (!ddz::supports_violation(t)) continue;
        CAPTURE(ddz::cli_name(t));
        auto cfg = config(t, 3);
        cfg.violate = true;
        const auto report = ddz::fuzz(cfg);
        CHECK(report.violated == 100);
        CHECK(report.expected == 100);
        CHECK(report.evaluated == 0);
        CHECK(report.passed == 0);
    }
}

TEST_CASE("verification statuses") {
    const DualMatrix z = DualMatrix::zero(1, 1);
    ddz::Case outside{Theorem::TriUpper,
                      ddz::BlockInstance{ddz::BlockTheorem::TriUpper,
                                         {{"A", z}, {"B", DualMatrix::eps(mat({{2}}))}, {"D", z}}}};
    const auto r = ddz::verify_case(outside);
    CHECK(r.status == "outside_dcz");
    CHECK_FALSE(r.pass);
    REQUIRE(r.assembled_in_dcz);
    CHECK_FALSE(*r.assembled_in_dcz);
    CHECK(r.defining);

    const DualMatrix i2 = DualMatrix::identity(2);
    ddz::Case violated{Theorem::AbioRight,
                       ddz::BlockInstance{ddz::BlockTheorem::AbioRight, {{"A", i2}, {"B", i2}}}};
    const auto v = ddz::verify_case(violated);
    CHECK(v.status == "hypothesis_violated");
    CHECK_FALSE(v.hypotheses.empty());

    const auto good = ddz::verify_case(ddz::gen_instance(config(Theorem::AbcoRight, 4), 0));
    CHECK(good.status == "pass");
    CHECK(good.digest.size() == 16);
    const auto j = ddz::to_json(good);
    CHECK(j["status"] == "pass");
    CHECK(j.contains("rel_error"));
}

TEST_CASE("counterexamples are written and reload") {
    // an impossible residual bound turns every evaluated trial into a failure
    ddz::Tolerances strict;
    strict.residual = 0.0;
    const auto dir = scratch_dir("cx");
    auto cfg = config(Theorem::Bipartite, 21, 5);
    const auto report = ddz::fuzz(cfg, strict, {dir});
    CHECK(report.passed < 5);

    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        ++files;
        const auto j = ddz::read_json_file(entry.path());
        const ddz::Case c = ddz::case_from_json(j["case"]);
        const int trial = j["record"]["trial"];
        CHECK(entry.path().filename().string() ==
              "bipartite-21-" + std::to_string(trial) + ".json");
        CHECK(ddz::case_to_json(c) == ddz::case_to_json(ddz::gen_instance(cfg, trial)));
        CHECK(ddz::verify_case(c).status == "pass");
    }
    CHECK(files == 5 - report.passed);
    std::filesystem::remove_all(dir);

    // nothing is written when every trial passes
    const auto clean = scratch_dir("clean");
    ddz::fuzz(config(Theorem::Cline, 22, 5), {}, {clean});
    CHECK(std::filesystem::is_empty(clean));
    std::filesystem::remove_all(clean);
}

TEST_CASE("theorem table") {
    CHECK(ddz::all_theorems().size() == 15);
    for (Theorem t : ddz::all_theorems()) CHECK(ddz::theorem_from_cli(ddz::cli_name(t)) == t);
    CHECK_FALSE(ddz::theorem_from_cli("nope"));
    CHECK(ddz::as_block(Theorem::AbcoLeft) == ddz::BlockTheorem::AbcoLeft);
    CHECK_FALSE(ddz::as_block(Theorem::Windmill));
    CHECK(ddz::summary_json(ddz::fuzz(config(Theorem::Cline, 1, 2)))["summary"] == true);
}
