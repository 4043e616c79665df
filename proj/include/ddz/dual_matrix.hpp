#pragma once

// Dense dual complex matrices A + ε A0, the block embedding
// Φ(Â) = [[A, A0], [0, A]], and the rank/index notions built on it.

#include <optional>
#include <vector>
#include <Eigen/Dense>

#include "ddz/dual_scalar.hpp"
#include "ddz/tolerances.hpp"

namespace ddz {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct DualMatrix {
    ComplexMatrix st;   // standard part
    ComplexMatrix inf;  // infinitesimal part

    DualMatrix() = default;
    /// Dual matrix with zero infinitesimal part.
    explicit DualMatrix(ComplexMatrix standard);
    DualMatrix(ComplexMatrix standard, ComplexMatrix infinitesimal);

    static DualMatrix zero(Eigen::Index rows, Eigen::Index cols);
    static DualMatrix identity(Eigen::Index n);
    /// ε·X
    static DualMatrix eps(ComplexMatrix x);

    Eigen::Index rows() const { return st.rows(); }
    Eigen::Index cols() const { return st.cols(); }
    bool square() const { return st.rows() == st.cols(); }

    DualScalar operator()(Eigen::Index i, Eigen::Index j) const { return {st(i, j), inf(i, j)}; }
    void set(Eigen::Index i, Eigen::Index j, const DualScalar& v) {
        st(i, j) = v.st;
        inf(i, j) = v.inf;
    }

    DualMatrix block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr, Eigen::Index nc) const;
    void set_block(Eigen::Index r0, Eigen::Index c0, const DualMatrix& b);
    /// Plain transpose (no conjugation).
    DualMatrix transpose() const { return {st.transpose(), inf.transpose()}; }

    DualMatrix operator-() const { return {-st, -inf}; }
    DualMatrix& operator+=(const DualMatrix& o);
    DualMatrix& operator-=(const DualMatrix& o);

    /// sqrt(||st||_F² + ||inf||_F²)
    double norm() const;
    bool operator==(const DualMatrix& o) const { return st == o.st && inf == o.inf; }
};

DualMatrix operator+(DualMatrix a, const DualMatrix& b);
DualMatrix operator-(DualMatrix a, const DualMatrix& b);
DualMatrix operator*(const DualMatrix& a, const DualMatrix& b);
DualMatrix operator*(const DualScalar& s, const DualMatrix& a);
DualMatrix operator*(const DualMatrix& a, const DualScalar& s);

/// std = X·Y, inf = X·Y0 + X0·Y.  Throws ShapeMismatch.
DualMatrix dmul(const DualMatrix& x, const DualMatrix& y);
/// X^k by repeated squaring; X^0 = I.
DualMatrix dpow(const DualMatrix& x, int k);
/// Infinitesimal part of X^k from the closed sum Σ_{i=1}^{k} A^{k-i} A0 A^{i-1}.
ComplexMatrix power_inf_sum(const DualMatrix& x, int k);

/// [[a, b], [c, d]]; shapes must tile.
DualMatrix assemble(const DualMatrix& a, const DualMatrix& b, const DualMatrix& c,
                    const DualMatrix& d);
ComplexMatrix assemble(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d);
/// Block diagonal of square or rectangular pieces.
DualMatrix block_diag(const std::vector<DualMatrix>& blocks);

ComplexMatrix phi_embed(const DualMatrix& x);

/// ||x - y|| / max(1, ||y||)
double rel_error(const DualMatrix& x, const DualMatrix& y);
double rel_error(const ComplexMatrix& x, const ComplexMatrix& y);

// ---- ranks and indices -------------------------------------------------

/// Numerical rank: singular values > max(m,n) * tol.rank * max(scale, sigma_max).
int numerical_rank(const ComplexMatrix& a, const Tolerances& tol = {}, double scale = 0.0);

/// Smallest k with rank(A^k) = rank(A^{k+1}); also reports rank(A^k).
struct PowerIndex {
    int index = 0;
    int core_rank = 0;
};
PowerIndex matrix_index(const ComplexMatrix& a, const Tolerances& tol = {});
inline int index_of(const ComplexMatrix& a, const Tolerances& tol = {}) {
    return matrix_index(a, tol).index;
}

int rank_std(const DualMatrix& x, const Tolerances& tol = {});
/// rank(Φ(X)) - rank(X.st): number of nonzero diagonal entries (units and
/// ε-entries) of the dual Smith form.
int rank_dual(const DualMatrix& x, const Tolerances& tol = {});

struct IndexReport {
    int ind_std = 0;
    std::optional<int> ind_dual;
    int ind_phi = 0;
};
IndexReport indices(const DualMatrix& x, const Tolerances& tol = {});

}  // namespace ddz
