// ddz: command line front end.
//
// Exit codes: 0 ok, 1 verification failure or other error, 2 hypothesis
// violation, 3 not dual Drazin invertible, 4 malformed input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ddz/errors.hpp"
#include "ddz/harness.hpp"
#include "ddz/io.hpp"

namespace {

using namespace ddz;

struct Outputs {
    std::string input;
    std::string output;
};

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(1) << '\n';
    } else {
        write_json_file(path, j);
    }
}

void emit_lines(const std::vector<json>& lines, const std::string& path) {
    if (path.empty()) {
        for (const auto& l : lines) {
            std::cout << dump_line(l) << '\n';
        }
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    for (const auto& l : lines) {
        out << dump_line(l) << '\n';
    }
}

std::optional<double> env_double(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw SchemaError(std::string(name) + ": not a number");
    }
}

// block verbs: the file holds {"blocks": {...}}; the verb fixes the theorem
BlockInstance load_instance(const std::string& path, BlockTheorem t) {
    json j = read_json_file(path);
    if (!j.is_object()) {
        throw SchemaError(path + ": expected an object");
    }
    j["theorem"] = std::string(to_string(t));
    return block_instance_from_json(j);
}

DualMatrix all_ones(Eigen::Index rows, Eigen::Index cols) {
    return DualMatrix(ComplexMatrix::Ones(rows, cols));
}

GraphSpec graph_from_flags(const std::string& family, int m, int n, const std::string& weights,
                           const std::string& spec_path) {
    if (!spec_path.empty()) {
        return graph_spec_from_json(read_json_file(spec_path));
    }
    json j = weights.empty() ? json::object() : read_json_file(weights);
    if (!j.is_object()) {
        throw SchemaError("weights: expected an object");
    }
    if (family == "double-star") {
        j["family"] = "double_star";
        j["m"] = m;
        j["n"] = n;
        // unit weights for anything not given
        for (const char* key : {"x", "y"}) {
            if (!j.contains(key)) {
                j[key] = dual_vector_to_json(all_ones(m, 1));
            }
        }
        for (const char* key : {"w", "v"}) {
            if (!j.contains(key) && !(std::string(key) == "w" && j.contains("omega"))) {
                j[key] = dual_vector_to_json(all_ones(n, 1));
            }
        }
        for (const char* key : {"a", "b"}) {
            if (!j.contains(key)) {
                j[key] = 1.0;
            }
        }
    } else if (family == "dlinked-stars") {
        j["family"] = "dlinked_stars";
    } else if (family == "windmill") {
        j["family"] = "windmill";
        j["m"] = m;
        j["n"] = n;
    } else {
        throw SchemaError("unknown graph family " + family);
    }
    return graph_spec_from_json(j);
}

int run(int argc, char** argv) {
    CLI::App app{"Drazin and dual Drazin inverses, block formulas and weighted digraphs"};
    app.require_subcommand(1);

    std::optional<double> rank_tol, residual_tol;
    app.add_option("--rank-tol", rank_tol, "relative singular value threshold");
    app.add_option("--residual-tol", residual_tol, "verification tolerance");

    Outputs io;
    auto add_io = [&](CLI::App* sub, bool need_input = true) {
        auto* opt = sub->add_option("-i,--input", io.input, "input JSON");
        if (need_input) {
            opt->required();
        }
        sub->add_option("-o,--output", io.output, "output path (stdout if omitted)");
    };

    auto* drazin = app.add_subcommand("drazin", "Drazin inverse of the standard part");
    add_io(drazin);
    auto* dual = app.add_subcommand("dual-drazin", "dual Drazin inverse");
    add_io(dual);
    auto* exists = app.add_subcommand("exists", "existence test (exit 3 when it fails)");
    add_io(exists);
    auto* index = app.add_subcommand("index", "standard, dual and embedded indices");
    add_io(index);
    auto* rank = app.add_subcommand("rank", "standard and dual rank");
    add_io(rank);
    bool exact_rank = false;
    rank->add_flag("--exact", exact_rank, "also run exact elimination (Gaussian integer input)");

    auto* cline_cmd = app.add_subcommand("cline", "(AB)^D from blocks A, B");
    add_io(cline_cmd);
    auto* tri = app.add_subcommand("tri", "block triangular matrix from A, B, D");
    add_io(tri);
    std::string orientation = "upper";
    tri->add_option("--orientation", orientation)->check(CLI::IsMember({"upper", "lower"}));
    auto* abio = app.add_subcommand("abio", "[[A, B], [I, 0]] from A, B");
    add_io(abio);
    auto* abco = app.add_subcommand("abco", "[[A, B], [C, 0]] from A, B, C");
    add_io(abco);
    std::string side = "right";
    for (auto* sub : {abio, abco}) {
        sub->add_option("--side", side)->check(CLI::IsMember({"right", "left"}));
    }
    auto* bip = app.add_subcommand("bipartite", "[[0, B], [C, 0]] from B, C");
    add_io(bip);
    bool check_only = false;
    for (auto* sub : {cline_cmd, tri, abio, abco, bip}) {
        sub->add_flag("--check", check_only, "only report the hypothesis residuals");
    }

    auto* graph = app.add_subcommand("graph", "adjacency matrix of a weighted digraph");
    std::string family;
    int gm = 1, gn = 1;
    std::string weights, spec_path, inverse_path, formula;
    graph->add_option("family", family, "double-star | dlinked-stars | windmill")
        ->required()
        ->check(CLI::IsMember({"double-star", "dlinked-stars", "windmill"}));
    graph->add_option("--m", gm, "first size parameter")->check(CLI::PositiveNumber);
    graph->add_option("--n", gn, "second size parameter")->check(CLI::PositiveNumber);
    graph->add_option("--weights", weights, "JSON with the arc weights");
    graph->add_option("--spec", spec_path, "complete graph spec (overrides --m/--n/--weights)");
    graph->add_option("-o,--output", io.output, "adjacency matrix output");
    graph->add_option("--inverse", inverse_path, "also write the closed-form dual Drazin inverse");
    graph->add_option("--formula", formula, "windmill variant for --inverse")
        ->check(CLI::IsMember({"windmill", "windmill-bc0", "windmill-group"}));

    auto* verify = app.add_subcommand("verify", "check one case against the reference");
    add_io(verify);

    auto* fuzz_cmd = app.add_subcommand("fuzz", "random verification of a formula");
    GenConfig cfg;
    std::string theorem_name, report_path, cex_dir;
    std::vector<std::string> names;
    for (Theorem t : all_theorems()) {
        names.emplace_back(cli_name(t));
    }
    fuzz_cmd->add_option("--theorem", theorem_name)->required()->check(CLI::IsMember(names));
    fuzz_cmd->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--seed", cfg.seed);
    fuzz_cmd->add_option("--dim-min", cfg.dim_min)->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--dim-max", cfg.dim_max)->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--entry-scale", cfg.entry_scale)->check(CLI::PositiveNumber);
    fuzz_cmd->add_flag("--violate", cfg.violate, "generate instances that break the hypotheses");
    fuzz_cmd->add_option("-o,--output", report_path, "JSON-lines report (stdout if omitted)");
    fuzz_cmd->add_option("--counterexamples", cex_dir, "directory for failing cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    Tolerances tol;
    if (auto v = env_double("DDZ_RANK_TOL")) {
        tol.rank = *v;
    }
    if (auto v = env_double("DDZ_RESIDUAL_TOL")) {
        tol.residual = *v;
    }
    if (rank_tol) {
        tol.rank = *rank_tol;
    }
    if (residual_tol) {
        tol.residual = *residual_tol;
    }

    auto read_matrix = [&] { return dual_matrix_from_json(read_json_file(io.input)); };

    if (drazin->parsed()) {
        const DrazinData d = drazin_complex(read_matrix().st, tol);
        emit(to_json(DualMatrix(d.ad)), io.output);
        return 0;
    }
    if (dual->parsed()) {
        emit(to_json(dual_drazin(read_matrix(), tol).inverse), io.output);
        return 0;
    }
    if (exists->parsed()) {
        const ExistenceResult r = dual_exists(read_matrix(), tol);
        emit({{"exists", r.exists}, {"index", r.index}, {"residual", r.residual}}, io.output);
        return r.exists ? 0 : 3;
    }
    if (index->parsed()) {
        const IndexReport r = indices(read_matrix(), tol);
        json out{{"ind_std", r.ind_std}, {"ind_phi", r.ind_phi}, {"ind_dual", nullptr}};
        if (r.ind_dual) {
            out["ind_dual"] = *r.ind_dual;
        }
        emit(out, io.output);
        return 0;
    }
    if (rank->parsed()) {
        const DualMatrix x = read_matrix();
        json out{{"rank_std", rank_std(x, tol)}, {"rank_dual", rank_dual(x, tol)}};
        if (exact_rank) {
            const SmithRank s = smith_rank_oracle(x);
            out["exact"] = {{"units", s.r}, {"eps", s.s}};
        }
        emit(out, io.output);
        return 0;
    }

    std::optional<BlockTheorem> block;
    if (cline_cmd->parsed()) {
        block = BlockTheorem::Cline;
    } else if (tri->parsed()) {
        block = orientation == "upper" ? BlockTheorem::TriUpper : BlockTheorem::TriLower;
    } else if (abio->parsed()) {
        block = side == "right" ? BlockTheorem::AbioRight : BlockTheorem::AbioLeft;
    } else if (abco->parsed()) {
        block = side == "right" ? BlockTheorem::AbcoRight : BlockTheorem::AbcoLeft;
    } else if (bip->parsed()) {
        block = BlockTheorem::Bipartite;
    }
    if (block) {
        const BlockInstance inst = load_instance(io.input, *block);
        const HypothesisReport report = check_hypotheses(inst, tol);
        if (check_only) {
            json checks = json::array();
            for (const auto& c : report.checks) {
                checks.push_back({{"name", c.name}, {"residual", c.residual},
                                  {"threshold", c.threshold}, {"pass", c.pass}});
            }
            emit({{"pass", report.all_pass()}, {"checks", checks}}, io.output);
            return report.all_pass() ? 0 : 2;
        }
        emit(to_json(evaluate_closed_form(inst, tol)), io.output);
        return 0;
    }

    if (graph->parsed()) {
        const GraphSpec spec = graph_from_flags(family, gm, gn, weights, spec_path);
        emit(to_json(build_adjacency(spec).matrix), io.output);
        if (!inverse_path.empty()) {
            Case c;
            c.payload = spec;
            c.theorem = family == "double-star"     ? Theorem::DoubleStar
                        : family == "dlinked-stars" ? Theorem::DLinkedStars
                        : formula.empty()           ? Theorem::Windmill
                                                    : *theorem_from_cli(formula);
            const HypothesisReport report = check_case(c, tol);
            if (!report.all_pass()) {
                throw HypothesisViolated(report.failures());
            }
            write_json_file(inverse_path, to_json(evaluate_case(c, tol)));
        }
        return 0;
    }

    if (verify->parsed()) {
        const Case c = case_from_json(read_json_file(io.input));
        TrialRecord r = verify_case(c, tol);
        emit_lines({to_json(r)}, io.output);
        if (r.status == "hypothesis_violated") {
            return 2;
        }
        if (r.status == "not_invertible") {
            return 3;
        }
        return r.pass ? 0 : 1;
    }

    if (fuzz_cmd->parsed()) {
        cfg.theorem = *theorem_from_cli(theorem_name);
        if (cfg.dim_max < cfg.dim_min) {
            throw SchemaError("--dim-max must be at least --dim-min");
        }
        FuzzOptions opts;
        if (!cex_dir.empty()) {
            opts.counterexample_dir = cex_dir;
        }
        const VerifyReport report = fuzz(cfg, tol, opts);
        std::vector<json> lines;
        for (const auto& r : report.trials) {
            lines.push_back(to_json(r));
        }
        lines.push_back(summary_json(report));
        emit_lines(lines, report_path);
        std::cerr << cli_name(cfg.theorem) << ": " << report.expected << "/" << cfg.trials
                  << " as expected, max rel error " << report.max_error << '\n';
        return report.expected == cfg.trials ? 0 : 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ddz::HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << '\n';
        return 2;
    } catch (const ddz::IndexTooLarge& e) {
        std::cerr << "hypothesis violated: " << e.what() << '\n';
        return 2;
    } catch (const ddz::NotDualDrazinInvertible& e) {
        std::cerr << "not dual Drazin invertible: " << e.what() << '\n';
        return 3;
    } catch (const ddz::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 4;
    } catch (const ddz::SpecInvalid& e) {
        std::cerr << "invalid spec: " << e.what() << '\n';
        return 4;
    } catch (const ddz::ShapeMismatch& e) {
        std::cerr << "shape mismatch: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
