#pragma once

namespace ddz {

/// Numerical thresholds shared by every routine. All are relative.
struct Tolerances {
    /// singular values below max(m,n) * rank * sigma_max count as zero
    double rank = 1e-12;
    /// T22 of the reordered Schur form counts as nilpotent at power q once
    /// ||T22^q|| <= cluster * ||A||^q
    double cluster = 1e-10;
    /// ||A^π M A^π||_F <= existence * (1 + ||M||_F)
    double existence = 1e-9;
    /// hypothesis residuals: r <= hypothesis * (1 + operand norms)
    double hypothesis = 1e-9;
    /// |a| <= appreciable * scale means a dual number is infinitesimal
    double appreciable = 1e-12;
    /// verification: closed form vs reference and defining-equation residuals
    double residual = 1e-8;
};

}  // namespace ddz
