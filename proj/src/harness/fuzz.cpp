#include <algorithm>
#include <array>
#include <cstdio>

#include "ddz/errors.hpp"
#include "ddz/harness.hpp"

namespace ddz {

namespace {

struct TheoremInfo {
    Theorem id;
    std::string_view cli;
    std::optional<BlockTheorem> block;
    bool violation;
};

constexpr std::array<TheoremInfo, 15> kTheorems{{
    {Theorem::Cline, "cline", BlockTheorem::Cline, false},
    {Theorem::TriUpper, "tri-upper", BlockTheorem::TriUpper, false},
    {Theorem::TriLower, "tri-lower", BlockTheorem::TriLower, false},
    {Theorem::SumPQ0, "sum-pq0", BlockTheorem::SumPQ0, true},
    {Theorem::AbioRight, "abio-right", BlockTheorem::AbioRight, true},
    {Theorem::AbioLeft, "abio-left", BlockTheorem::AbioLeft, true},
    {Theorem::AbcoRight, "abco-right", BlockTheorem::AbcoRight, true},
    {Theorem::AbcoLeft, "abco-left", BlockTheorem::AbcoLeft, true},
    {Theorem::Bipartite, "bipartite", BlockTheorem::Bipartite, false},
    {Theorem::DoubleStar, "double-star", std::nullopt, true},
    {Theorem::DLinkedStars, "dlinked-stars", std::nullopt, true},
    {Theorem::Windmill, "windmill", std::nullopt, true},
    {Theorem::WindmillBC0, "windmill-bc0", std::nullopt, true},
    {Theorem::WindmillGroup, "windmill-group", std::nullopt, false},
    {Theorem::BipartiteDual, "bipartite-dual", std::nullopt, false},
}};

const TheoremInfo& info(Theorem t) {
    for (const auto& i : kTheorems) {
        if (i.id == t) {
            return i;
        }
    }
    throw std::invalid_argument("unknown theorem");
}

bool is_graph(Theorem t) {
    switch (t) {
        case Theorem::DoubleStar:
        case Theorem::DLinkedStars:
        case Theorem::Windmill:
        case Theorem::WindmillBC0:
        case Theorem::WindmillGroup:
            return true;
        default:
            return false;
    }
}

template <class T>
const T& graph_as(const Case& c) {
    const auto* spec = std::get_if<GraphSpec>(&c.payload);
    const T* g = spec ? std::get_if<T>(spec) : nullptr;
    if (g == nullptr) {
        throw SchemaError(std::string(cli_name(c.theorem)) + ": payload has the wrong family");
    }
    return *g;
}

const BlockInstance& block_of(const Case& c) {
    const auto* inst = std::get_if<BlockInstance>(&c.payload);
    if (inst == nullptr) {
        throw SchemaError(std::string(cli_name(c.theorem)) + ": expected a block instance");
    }
    return *inst;
}

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json checks_to_json(const std::vector<HypothesisCheck>& checks) {
    json out = json::array();
    for (const auto& c : checks) {
        out.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"threshold", c.threshold},
                       {"pass", c.pass}});
    }
    return out;
}

}  // namespace

const std::vector<Theorem>& all_theorems() {
    static const std::vector<Theorem> all = [] {
        std::vector<Theorem> v;
        for (const auto& i : kTheorems) {
            v.push_back(i.id);
        }
        return v;
    }();
    return all;
}

std::string_view cli_name(Theorem t) { return info(t).cli; }

std::optional<Theorem> theorem_from_cli(std::string_view s) {
    for (const auto& i : kTheorems) {
        if (i.cli == s) {
            return i.id;
        }
    }
    return std::nullopt;
}

std::optional<BlockTheorem> as_block(Theorem t) { return info(t).block; }

bool supports_violation(Theorem t) { return info(t).violation; }

// ---- cases --------------------------------------------------------------------

json case_to_json(const Case& c) {
    json j = std::visit([](const auto& p) { return to_json(p); }, c.payload);
    j["formula"] = std::string(cli_name(c.theorem));
    return j;
}

Case case_from_json(const json& j) {
    if (!j.is_object()) {
        throw SchemaError("case: expected an object");
    }
    Case c;
    if (j.contains("blocks")) {
        BlockInstance inst = block_instance_from_json(j);
        c.theorem = Theorem::Cline;
        for (const auto& i : kTheorems) {
            if (i.block == inst.theorem) {
                c.theorem = i.id;
            }
        }
        c.payload = std::move(inst);
    } else if (j.contains("family")) {
        GraphSpec spec = graph_spec_from_json(j);
        c.theorem = std::holds_alternative<DoubleStar>(spec)     ? Theorem::DoubleStar
                    : std::holds_alternative<DLinkedStars>(spec) ? Theorem::DLinkedStars
                                                                 : Theorem::Windmill;
        c.payload = std::move(spec);
    } else {
        throw SchemaError("case: need \"blocks\" or \"family\"");
    }
    if (j.contains("formula")) {
        if (!j["formula"].is_string()) {
            throw SchemaError("case: \"formula\" must be a string");
        }
        const auto t = theorem_from_cli(j["formula"].get<std::string>());
        if (!t) {
            throw SchemaError("case: unknown formula " + j["formula"].get<std::string>());
        }
        const bool graph_payload = std::holds_alternative<GraphSpec>(c.payload);
        if (graph_payload != is_graph(*t)) {
            throw SchemaError("case: formula " + std::string(cli_name(*t)) +
                              " does not match the payload");
        }
        if (*t == Theorem::BipartiteDual && block_of(c).theorem != BlockTheorem::Bipartite) {
            throw SchemaError("case: bipartite-dual takes a BIPARTITE instance");
        }
        if (!graph_payload && *t != Theorem::BipartiteDual && as_block(*t) != block_of(c).theorem) {
            throw SchemaError("case: formula and theorem disagree");
        }
        if (graph_payload && (*t == Theorem::WindmillBC0 || *t == Theorem::WindmillGroup)) {
            graph_as<DutchWindmill>(Case{*t, c.payload});
        }
        c.theorem = *t;
    }
    return c;
}

HypothesisReport check_case(const Case& c, const Tolerances& tol) {
    switch (c.theorem) {
        case Theorem::DoubleStar:
            return check_double_star(graph_as<DoubleStar>(c), tol);
        case Theorem::DLinkedStars:
            return check_dlinked_stars(graph_as<DLinkedStars>(c), tol);
        case Theorem::Windmill:
        case Theorem::WindmillGroup:
            return check_windmill(graph_as<DutchWindmill>(c), tol);
        case Theorem::WindmillBC0:
            return check_windmill_bc_zero(graph_as<DutchWindmill>(c), tol);
        case Theorem::BipartiteDual: {
            const BlockInstance& inst = block_of(c);
            HypothesisReport report;
            add_membership_check(report, "FE", inst.at("C") * inst.at("B"), tol);
            return report;
        }
        default:
            return check_hypotheses(block_of(c), tol);
    }
}

DualMatrix evaluate_case(const Case& c, const Tolerances& tol, bool checked) {
    if (const auto* inst = std::get_if<BlockInstance>(&c.payload);
        inst != nullptr && c.theorem != Theorem::BipartiteDual) {
        return evaluate_closed_form(*inst, tol, checked);
    }
    if (checked) {
        const HypothesisReport report = check_case(c, tol);
        if (!report.all_pass()) {
            throw HypothesisViolated(std::string(cli_name(c.theorem)) + ": " + report.failures());
        }
        require_assembled_member(assembled_matrix(c), cli_name(c.theorem), tol);
    }
    switch (c.theorem) {
        case Theorem::DoubleStar:
            return ds_dual_drazin(graph_as<DoubleStar>(c), tol);
        case Theorem::DLinkedStars:
            return dls_dual_drazin(graph_as<DLinkedStars>(c), tol);
        case Theorem::Windmill:
            return dw_dual_drazin(graph_as<DutchWindmill>(c), tol);
        case Theorem::WindmillBC0:
            return dw_bc_zero(graph_as<DutchWindmill>(c), tol);
        case Theorem::WindmillGroup:
            return dw_group(graph_as<DutchWindmill>(c), tol);
        case Theorem::BipartiteDual: {
            const BlockInstance& inst = block_of(c);
            return bipartite_dual(inst.at("B"), inst.at("C"), tol);
        }
        default:
            return evaluate_closed_form(block_of(c), tol, checked);
    }
}

DualMatrix assembled_matrix(const Case& c) {
    if (const auto* spec = std::get_if<GraphSpec>(&c.payload)) {
        return build_adjacency(*spec).matrix;
    }
    return assemble_instance(block_of(c));
}

// ---- verification -------------------------------------------------------------

TrialRecord verify_case(const Case& c, const Tolerances& tol) {
    TrialRecord r;
    try {
        r.digest = fnv1a(case_to_json(c).dump());
        const DualMatrix m = assembled_matrix(c);
        r.order = m.rows();
        const HypothesisReport report = check_case(c, tol);
        r.hypotheses = report.checks;
        if (!report.all_pass()) {
            r.status = "hypothesis_violated";
            r.message = report.failures();
            return r;
        }
        const ExistenceResult ex = dual_exists(m, tol);
        r.assembled_in_dcz = ex.exists;
        DualMatrix closed;
        try {
            closed = evaluate_case(c, tol, false);
        } catch (const NotDualDrazinInvertible& e) {
            // a block (BA, BC, θ̂, ...) the formula inverts is itself outside DC_z
            r.status = ex.exists ? "fail" : "not_invertible";
            r.message = e.what();
            return r;
        }
        if (!ex.exists) {
            r.status = "outside_dcz";
            r.defining = defining_residuals(m, closed, ex.index);
            r.message = "hypotheses hold but the assembled matrix is not in DC_z (residual " +
                        std::to_string(ex.residual) + ")";
            return r;
        }
        const DualMatrix oracle = dual_drazin(m, tol).inverse;
        r.rel_error = rel_error(closed, oracle);
        r.defining = defining_residuals(m, closed, ex.index);
        const double worst = *std::max_element(r.defining->begin(), r.defining->end());
        r.pass = *r.rel_error <= tol.residual && worst <= tol.residual;
        r.status = r.pass ? "pass" : "fail";
        if (!r.pass) {
            r.message = "closed form disagrees with the reference";
        }
    } catch (const std::exception& e) {
        r.status = "error";
        r.message = e.what();
        r.pass = false;
    }
    r.expected = r.pass;
    return r;
}

VerifyReport fuzz(const GenConfig& cfg, const Tolerances& tol, const FuzzOptions& opts) {
    VerifyReport report;
    report.cfg = cfg;
    if (opts.counterexample_dir) {
        std::filesystem::create_directories(*opts.counterexample_dir);
    }
    for (int t = 0; t < cfg.trials; ++t) {
        TrialRecord rec;
        std::optional<Case> c;
        try {
            c = gen_instance(cfg, t);
            rec = verify_case(*c, tol);
        } catch (const std::exception& e) {
            rec.status = "error";
            rec.message = e.what();
        }
        rec.trial = t;
        rec.expected = cfg.violate ? rec.status == "hypothesis_violated" : rec.pass;

        report.passed += rec.pass ? 1 : 0;
        report.violated += rec.status == "hypothesis_violated" ? 1 : 0;
        report.expected += rec.expected ? 1 : 0;
        if (rec.rel_error) {
            ++report.evaluated;
            report.max_error = std::max(report.max_error, *rec.rel_error);
        }
        if (rec.rel_error && rec.defining) {
            for (double d : *rec.defining) {
                report.max_residual = std::max(report.max_residual, d);
            }
        }
        if (opts.counterexample_dir && c && (rec.status == "fail" || rec.status == "outside_dcz")) {
            const auto name = std::string(cli_name(cfg.theorem)) + "-" + std::to_string(cfg.seed) +
                              "-" + std::to_string(t) + ".json";
            write_json_file(*opts.counterexample_dir / name,
                            {{"case", case_to_json(*c)}, {"record", to_json(rec)}});
        }
        report.trials.push_back(std::move(rec));
    }
    return report;
}

json to_json(const TrialRecord& r) {
    json j{{"trial", r.trial},
           {"digest", r.digest},
           {"order", r.order},
           {"status", r.status},
           {"pass", r.pass},
           {"expected", r.expected},
           {"hypotheses", checks_to_json(r.hypotheses)}};
    if (r.rel_error) {
        j["rel_error"] = *r.rel_error;
    }
    if (r.defining) {
        j["defining_residuals"] = *r.defining;
    }
    if (r.assembled_in_dcz) {
        j["assembled_in_dcz"] = *r.assembled_in_dcz;
    }
    if (!r.message.empty()) {
        j["message"] = r.message;
    }
    return j;
}

json summary_json(const VerifyReport& report) {
    return {{"summary", true},
            {"theorem", std::string(cli_name(report.cfg.theorem))},
            {"seed", report.cfg.seed},
            {"trials", report.cfg.trials},
            {"violate", report.cfg.violate},
            {"dim_max", report.cfg.dim_max},
            {"passed", report.passed},
            {"violated", report.violated},
            {"expected", report.expected},
            {"evaluated", report.evaluated},
            {"max_rel_error", report.max_error},
            {"max_residual", report.max_residual}};
}

}  // namespace ddz
