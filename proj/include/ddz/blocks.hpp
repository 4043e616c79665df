#pragma once

// Closed-form dual Drazin inverses for structured block matrices:
// Cline's formula, block triangular matrices, sums with PQ = 0, and the
// anti-triangular forms [[A, B], [I, 0]], [[A, B], [C, 0]], [[0, B], [C, 0]].

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddz/drazin.hpp"

namespace ddz {

enum class BlockTheorem {
    Cline,
    TriUpper,
    TriLower,
    SumPQ0,
    AbioRight,
    AbioLeft,
    AbcoRight,
    Bipartite,
    AbcoLeft,
};

enum class Orientation { Upper, Lower };
enum class Side { Right, Left };

/// "ABCO_RIGHT" <-> BlockTheorem::AbcoRight
std::string_view to_string(BlockTheorem t);
std::optional<BlockTheorem> block_theorem_from_string(std::string_view s);
/// Names of the blocks each theorem expects, e.g. {"A", "B", "C"}.
const std::vector<std::string>& block_names(BlockTheorem t);

struct BlockInstance {
    BlockTheorem theorem = BlockTheorem::Cline;
    std::map<std::string, DualMatrix> blocks;

    const DualMatrix& at(const std::string& name) const;
};

struct HypothesisCheck {
    std::string name;
    double residual = 0.0;   // absolute (Frobenius)
    double threshold = 0.0;  // tol * (1 + operand norms)
    bool pass = false;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;

    bool all_pass() const;
    /// "name (residual r > threshold t); ..." for the failing checks
    std::string failures() const;
};

/// Adds a check `residual <= tol * scale`.  When `exact` is set the
/// residual must be exactly zero.
void add_check(HypothesisReport& report, std::string name, double residual, double scale,
               double tol, bool exact = false);
/// Adds "<name> in DC_z" from the existence test.
void add_membership_check(HypothesisReport& report, const std::string& name,
                          const DualMatrix& x, const Tolerances& tol);

/// Â (B̂ Â)^{2D} B̂
DualMatrix cline(const DualMatrix& a, const DualMatrix& b, const Tolerances& tol = {});

/// [[A, B], [0, D]]^D (upper) or [[D, 0], [B, A]]^D (lower).
DualMatrix tri_drazin(const DualMatrix& a, const DualMatrix& b, const DualMatrix& d,
                      Orientation orientation, const Tolerances& tol = {});

/// (P + Q)^D for P Q = 0.
DualMatrix sum_pq_zero(const DualMatrix& p, const DualMatrix& q, const Tolerances& tol = {});

/// [[A, B], [I, 0]]^D.  Right: A A^π B = B A A^π and A A^e B = 0.
/// Left: A A^π B = B A A^π and B A A^e = 0.
DualMatrix abio_drazin(const DualMatrix& a, const DualMatrix& b, Side side,
                       const Tolerances& tol = {});

/// [[A, B], [C, 0]]^D under the same conditions with BC in place of B.
DualMatrix abco_drazin(const DualMatrix& a, const DualMatrix& b, const DualMatrix& c, Side side,
                       const Tolerances& tol = {});

/// [[0, B], [C, 0]]^D = [[0, (BC)^D B], [C (BC)^D, 0]]
DualMatrix bipartite_drazin(const DualMatrix& b, const DualMatrix& c, const Tolerances& tol = {});

/// The full matrix the theorem inverts.
DualMatrix assemble_instance(const BlockInstance& inst);

/// One residual per named condition of the theorem (block memberships
/// included; membership of the assembled matrix is not a hypothesis here).
/// `strict` demands exact zeros for the conditions that are plain products.
HypothesisReport check_hypotheses(const BlockInstance& inst, const Tolerances& tol = {},
                                  bool strict = false);

/// Throws NotDualDrazinInvertible unless m passes the existence test.
void require_assembled_member(const DualMatrix& m, std::string_view what, const Tolerances& tol);

/// Evaluates the closed form.  When checked, throws HypothesisViolated if a
/// check fails and NotDualDrazinInvertible if the assembled matrix is not
/// in DC_z (a premise of the formulas); unchecked evaluates regardless.
DualMatrix evaluate_closed_form(const BlockInstance& inst, const Tolerances& tol = {},
                                bool checked = true);

}  // namespace ddz
