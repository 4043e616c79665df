#pragma once

// Drazin inverses of complex matrices and of dual complex matrices.

#include <array>
#include <deque>
#include <vector>

#include "ddz/dual_matrix.hpp"

namespace ddz {

struct DrazinData {
    ComplexMatrix ad;       // A^D
    int index = 0;          // Ind(A)
    ComplexMatrix proj_e;   // A A^D
    ComplexMatrix proj_pi;  // I - A A^D
};

/// Drazin inverse through a reordered complex Schur form
///   A = U [[T11, T12], [0, T22]] U*,  T11 invertible, T22 nilpotent,
///   A^D = U [[T11^{-1}, S], [0, 0]] U*,  S = Σ_{i<q} T11^{-(i+2)} T12 T22^i.
DrazinData drazin_complex(const ComplexMatrix& a, const Tolerances& tol = {});

/// Independent reference: A^k (A^{2k+1})^+ A^k, pseudoinverse by SVD in
/// extended precision.
ComplexMatrix drazin_oracle(const ComplexMatrix& a, const Tolerances& tol = {});

/// Drazin inverse when Ind(A) <= 1; IndexTooLarge otherwise.
ComplexMatrix group_inverse(const ComplexMatrix& a, const Tolerances& tol = {});

struct ExistenceResult {
    bool exists = false;
    ComplexMatrix m;        // Σ_{i=1}^{k} A^{k-i} A0 A^{i-1}
    double residual = 0.0;  // ||A^π M A^π||_F / (1 + ||M||_F)
    int index = 0;
};

/// Membership test for the set of dual matrices that have a dual Drazin
/// inverse: (I - A A^D) M (I - A A^D) = 0.
ExistenceResult dual_exists(const DualMatrix& x, const Tolerances& tol = {});

struct DualDrazinData {
    DualMatrix inverse;  // A^D + ε A_R
    ComplexMatrix m_matrix;
    bool exists = false;
    int index = 0;
    /// relative residuals of  X^k Y X = X^k,  Y X Y = Y,  X Y = Y X
    std::array<double, 3> residuals{};
};

/// A^D + ε A_R with
///   A_R = -A^D A0 A^D + Σ_{i<k} (A^D)^{i+2} A0 A^i A^π + Σ_{i<k} A^π A^i A0 (A^D)^{i+2}.
/// Throws NotDualDrazinInvertible when the existence condition fails.
DualDrazinData dual_drazin(const DualMatrix& x, const Tolerances& tol = {});

/// Normwise relative residuals of X^k Y X = X^k, Y X Y = Y and X Y = Y X
/// for a candidate Y, each divided by max(1, product of the operand norms).
std::array<double, 3> defining_residuals(const DualMatrix& x, const DualMatrix& y, int k);

/// (X^D)^k from the sum A^{kD} + ε Σ_{i<k} A^{iD} A_R A^{(k-i-1)D}.
DualMatrix dual_drazin_power(const DualMatrix& x, int k, const Tolerances& tol = {});

/// Cached spectral data of a dual matrix used by the block formulas:
/// X^D, X^e = X X^D, X^π = I - X^e, Ind_s(X), and powers of X and X^D.
class DualSpectral {
public:
    explicit DualSpectral(const DualMatrix& x, const Tolerances& tol = {});

    const DualMatrix& matrix() const { return x_; }
    const DualMatrix& drazin() const { return d_; }
    const DualMatrix& e() const { return e_; }
    const DualMatrix& pi() const { return pi_; }
    int index() const { return index_; }
    Eigen::Index size() const { return x_.rows(); }

    /// X^i, i >= 0
    const DualMatrix& pow(int i) const;
    /// (X^D)^s, s >= 0
    const DualMatrix& dpow(int s) const;

private:
    DualMatrix x_, d_, e_, pi_;
    int index_ = 0;
    mutable std::deque<DualMatrix> powers_, dpowers_;
};

}  // namespace ddz
