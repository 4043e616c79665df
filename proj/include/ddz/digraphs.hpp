#pragma once

// Dual-number-weighted digraph families and their adjacency matrices:
// double stars, D-linked stars and Dutch windmills D_{2n}^m, together with
// the specialized dual Drazin / group inverse formulas for each.
//
// Dual vectors are stored as one-column DualMatrix values.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ddz/blocks.hpp"

namespace ddz {

/// Two bidirected stars whose centers are joined both ways.  Vertex order:
/// center 1, its m leaves, center 2, its n leaves.
struct DoubleStar {
    int m = 1;
    int n = 1;
    DualMatrix x, y;  // center 1 -> leaves, leaves -> center 1 (length m)
    DualMatrix w, v;  // center 2 -> leaves, leaves -> center 2 (length n)
    DualScalar a, b;  // center 1 -> center 2, center 2 -> center 1
};

/// Stars with r_i leaves hung on the vertices of a base digraph.  Vertex
/// order: the n centers, then the leaves of star 1, star 2, ...
struct DLinkedStars {
    DualMatrix base;  // n x n
    std::vector<int> r;
    std::vector<DualMatrix> x, y;  // center i -> leaves, leaves -> center i
};

/// m cycles of length 2n sharing a hub.  Vertex order: hub, then the
/// 2n-1 vertices of each blade in turn.
struct DutchWindmill {
    int m = 1;
    int half = 1;                   // n, so each cycle has 2n vertices
    std::vector<DualMatrix> blades; // (2n-1) x (2n-1)
    std::vector<DualMatrix> x, y;   // hub -> blade, blade -> hub
};

using GraphSpec = std::variant<DoubleStar, DLinkedStars, DutchWindmill>;

using Pattern = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct AdjacencyBuild {
    DualMatrix matrix;
    std::vector<std::string> vertex_order;
    /// Windmills only: new position i holds old vertex perm[i]; hub and
    /// even blade positions first, odd blade positions after.
    std::optional<std::vector<int>> permutation_to_bipartite;
    /// 2mn - m + 1 for windmills (reported, unused by the formulas)
    std::optional<int> kappa;
};

std::string_view family_name(const GraphSpec& spec);  // "double_star", ...
Eigen::Index graph_order(const GraphSpec& spec);

/// Throws SpecInvalid on zero vectors, non-appreciable a/b or bad shapes.
void validate(const GraphSpec& spec);

/// Arcs the family allows, given the spec's blade patterns.
Pattern arc_pattern(const GraphSpec& spec);

AdjacencyBuild build_adjacency(const GraphSpec& spec);

/// Entry-wise nonzero pattern (either part nonzero).
Pattern support(const DualMatrix& x);

/// Unweighted path 1 - 2 - ... - (2n-1), both directions.
DualMatrix cycle_blade(int half);
/// e_first + e_last: the blade vertices adjacent to the hub.
DualMatrix cycle_ends(int half);
/// D_{2n}^m with unit weights on every arc.
DutchWindmill unweighted_windmill(int m, int half);

/// P X P^T with (P X P^T)(i, j) = X(perm[i], perm[j]).
DualMatrix permute(const DualMatrix& x, const std::vector<int>& perm);

struct BipartiteSplit {
    DualMatrix e;  // part 1 -> part 2
    DualMatrix f;  // part 2 -> part 1
};
/// Applies the windmill bipartition and extracts E, F.  Throws SpecInvalid
/// if either diagonal block is not exactly zero.
BipartiteSplit bipartite_blocks(const AdjacencyBuild& build);

/// The hub-and-blade partition [[0, B], [C, D]] of a windmill.
struct WindmillBlocks {
    DualMatrix b;  // 1 x N
    DualMatrix c;  // N x 1
    DualMatrix d;  // N x N block diagonal
};
WindmillBlocks windmill_blocks(const DutchWindmill& spec);

// ---- hypotheses -----------------------------------------------------------

/// w^T v = 0 as dual numbers.
HypothesisReport check_double_star(const DoubleStar& spec, const Tolerances& tol = {});
/// x_i^T y_i = 0 for every star.
HypothesisReport check_dlinked_stars(const DLinkedStars& spec, const Tolerances& tol = {});
/// D D^e C B = 0 and D C B = C B D D^π (all blade pairs at once).
HypothesisReport check_windmill(const DutchWindmill& spec, const Tolerances& tol = {});
/// C B = 0, i.e. y_s x_t^T = 0 for all s, t.
HypothesisReport check_windmill_bc_zero(const DutchWindmill& spec, const Tolerances& tol = {});

// ---- closed forms -----------------------------------------------------------

/// Needs θ = x^T y + a b appreciable or zero; a nonzero pure infinitesimal
/// θ throws NotDualDrazinInvertible.
DualMatrix ds_dual_drazin(const DoubleStar& spec, const Tolerances& tol = {});
DualMatrix dls_dual_drazin(const DLinkedStars& spec, const Tolerances& tol = {});
DualMatrix dw_dual_drazin(const DutchWindmill& spec, const Tolerances& tol = {});
DualMatrix dw_bc_zero(const DutchWindmill& spec, const Tolerances& tol = {});
/// Index-one case; IndexTooLarge if Ind(CB) > 1 or Ind(D) > 1.
DualMatrix dw_group(const DutchWindmill& spec, const Tolerances& tol = {});

/// [[0, E], [F, 0]]^D from (FE)^D and (FE)_R.
DualMatrix bipartite_dual(const DualMatrix& e, const DualMatrix& f, const Tolerances& tol = {});
/// Real, standard-only, Ind(EF) <= 1: [[0, (EF)^# E], [F (EF)^#, 0]].
ComplexMatrix bipartite_group_real(const ComplexMatrix& e, const ComplexMatrix& f,
                                   const Tolerances& tol = {});

}  // namespace ddz
