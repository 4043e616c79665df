#pragma once

// Random generation of instances that satisfy each formula's hypotheses
// exactly, an exact rank oracle over the dual Gaussian rationals, and the
// fuzz / verification driver.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ddz/blocks.hpp"
#include "ddz/digraphs.hpp"
#include "ddz/io.hpp"

namespace ddz {

enum class Theorem {
    Cline,
    TriUpper,
    TriLower,
    SumPQ0,
    AbioRight,
    AbioLeft,
    AbcoRight,
    AbcoLeft,
    Bipartite,
    DoubleStar,
    DLinkedStars,
    Windmill,
    WindmillBC0,
    WindmillGroup,
    BipartiteDual,
};

const std::vector<Theorem>& all_theorems();
/// "abco-right", "double-star", ...
std::string_view cli_name(Theorem t);
std::optional<Theorem> theorem_from_cli(std::string_view s);
std::optional<BlockTheorem> as_block(Theorem t);
bool supports_violation(Theorem t);

/// Formula plus its input.  BipartiteDual carries a BIPARTITE block
/// instance with B = E and C = F.
struct Case {
    Theorem theorem = Theorem::Cline;
    std::variant<BlockInstance, GraphSpec> payload;
};

json case_to_json(const Case& c);
/// Accepts a block instance or a graph spec; an optional "formula" key
/// selects between formulas sharing an input shape (e.g. "windmill-group").
Case case_from_json(const json& j);

HypothesisReport check_case(const Case& c, const Tolerances& tol = {});
/// Closed form for the case.  Checked mode validates the hypotheses and
/// membership of the assembled matrix first, like evaluate_closed_form.
DualMatrix evaluate_case(const Case& c, const Tolerances& tol = {}, bool checked = true);
/// The matrix whose dual Drazin inverse the formula claims to give.
DualMatrix assembled_matrix(const Case& c);

// ---- randomness -----------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Small Gaussian integers and dual integer matrices.
class IntRng {
public:
    explicit IntRng(std::uint64_t seed) : engine_(seed) {}

    /// uniform in [lo, hi]
    int uniform(int lo, int hi);
    bool coin(double p = 0.5);
    /// a + bi with a, b in [-scale, scale]; real with probability 1/2
    cplx gaussian(int scale);
    /// ±1 or ±i
    cplx unit();
    ComplexMatrix matrix(Eigen::Index rows, Eigen::Index cols, int scale);
    DualMatrix dual(Eigen::Index rows, Eigen::Index cols, int scale);

private:
    std::mt19937_64 engine_;
};

// ---- generation -------------------------------------------------------------

struct GenConfig {
    Theorem theorem = Theorem::Cline;
    int dim_min = 1;
    int dim_max = 4;  // per block
    std::uint64_t seed = 0;
    int entry_scale = 2;
    int trials = 100;
    /// produce instances whose hypotheses fail
    bool violate = false;
};

/// Deterministic in (cfg.seed, trial).  Trial 0 uses the smallest block
/// size and trial 1 the largest.
Case gen_instance(const GenConfig& cfg, int trial);

/// Square dual matrix of order n built as Ŝ (P̂ ⊕ N̂) Ŝ⁻¹ over the Gaussian
/// integers.  With member = false the infinitesimal part breaks
/// (I - AA^D) M (I - AA^D) = 0 by construction.
DualMatrix gen_dcz(IntRng& rng, Eigen::Index n, bool member, int scale = 2);

/// Random square dual integer matrix of order n with prescribed low rank
/// structure (units, ε-entries, zeros) hidden by unimodular equivalences.
DualMatrix gen_rank_instance(IntRng& rng, Eigen::Index n, int scale = 2);

// ---- exact oracle -------------------------------------------------------------

struct SmithRank {
    int r = 0;  // unit pivots
    int s = 0;  // ε pivots
};

/// Exact elimination over Q(i)[ε]/(ε²).  Entries must be Gaussian
/// integers (InexactInput otherwise).
SmithRank smith_rank_oracle(const DualMatrix& x);

// ---- verification -------------------------------------------------------------

struct TrialRecord {
    int trial = 0;
    std::string digest;
    Eigen::Index order = 0;  // of the assembled matrix
    /// pass, fail, hypothesis_violated, outside_dcz, not_invertible, error
    std::string status;
    std::vector<HypothesisCheck> hypotheses;
    std::optional<double> rel_error;
    std::optional<std::array<double, 3>> defining;
    /// false when the assembled matrix fails the existence test although
    /// the block hypotheses hold (status outside_dcz); the defining
    /// residuals of the closed form are still recorded at the standard index
    std::optional<bool> assembled_in_dcz;
    std::string message;
    bool pass = false;
    /// matches the expectation: a pass, or a rejection in violate mode
    bool expected = false;
};

struct VerifyReport {
    GenConfig cfg;
    std::vector<TrialRecord> trials;
    int passed = 0;
    int violated = 0;
    int expected = 0;
    int evaluated = 0;
    double max_error = 0.0;
    double max_residual = 0.0;
};

TrialRecord verify_case(const Case& c, const Tolerances& tol = {});

struct FuzzOptions {
    /// counterexamples are written here when set
    std::optional<std::filesystem::path> counterexample_dir;
};

VerifyReport fuzz(const GenConfig& cfg, const Tolerances& tol = {}, const FuzzOptions& opts = {});

json to_json(const TrialRecord& r);
json summary_json(const VerifyReport& report);

}  // namespace ddz
