#pragma once
// Reference computations used as test oracles.  They avoid the library's
// Schur route: the Drazin inverse comes from a full-rank factorization of
// A^k in extended precision, and dual quantities go through the block
// embedding [[A, A0], [0, A]].

#include <random>

#include <Eigen/Dense>

#include "ddz/dual_matrix.hpp"

namespace ref {

using ddz::ComplexMatrix;
using ddz::DualMatrix;
using LMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

inline int rank_ld(const LMat& a, long double scale) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<LMat> svd(a);
    const auto& sv = svd.singularValues();
    const long double cut = 1e-13L * std::max<long double>(1.0L, scale) *
                            static_cast<long double>(a.rows());
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > cut ? 1 : 0;
    return r;
}

/// Index of A: first k with rank A^k = rank A^{k+1}, measured in long double.
inline int index(const ComplexMatrix& a) {
    const auto n = a.rows();
    const LMat al = a.cast<std::complex<long double>>();
    const long double na = al.norm();
    LMat p = LMat::Identity(n, n);
    long double scale = 1.0L;
    int prev = static_cast<int>(n);
    for (int k = 0; k <= n; ++k) {
        p = p * al;
        scale *= std::max<long double>(na, 1.0L);
        const int next = rank_ld(p, scale);
        if (next == prev) return k;
        prev = next;
    }
    return static_cast<int>(n);
}

/// A^D = U (V* A U)^{-1} V* where A^k = U V* is a full-rank factorization.
inline ComplexMatrix drazin(const ComplexMatrix& a) {
    const auto n = a.rows();
    const int k = index(a);
    const LMat al = a.cast<std::complex<long double>>();
    LMat ak = LMat::Identity(n, n);
    long double scale = 1.0L;
    for (int i = 0; i < k; ++i) {
        ak = ak * al;
        scale *= std::max<long double>(al.norm(), 1.0L);
    }
    const int r = rank_ld(ak, scale);
    if (r == 0) return ComplexMatrix::Zero(n, n);
    Eigen::JacobiSVD<LMat> svd(ak, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const LMat u = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
    const LMat vt = svd.matrixV().leftCols(r).adjoint();
    const LMat core = vt * al * u;
    const LMat d = u * core.fullPivLu().inverse() * vt;
    return d.cast<std::complex<double>>();
}

/// Dual Drazin inverse read off the Drazin inverse of the embedding.  Only
/// meaningful when the input has one.
inline DualMatrix dual_drazin(const DualMatrix& x) {
    const auto n = x.rows();
    const ComplexMatrix pd = drazin(ddz::phi_embed(x));
    return {pd.topLeftCorner(n, n), pd.topRightCorner(n, n)};
}

/// Product through the embedding.
inline DualMatrix phi_mul(const DualMatrix& x, const DualMatrix& y) {
    const ComplexMatrix p = ddz::phi_embed(x) * ddz::phi_embed(y);
    return {p.topLeftCorner(x.rows(), y.cols()), p.topRightCorner(x.rows(), y.cols())};
}

inline ComplexMatrix random_matrix(std::mt19937_64& g, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> d;
    ComplexMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {d(g), d(g)};
    return m;
}

inline DualMatrix random_dual(std::mt19937_64& g, Eigen::Index r, Eigen::Index c) {
    return {random_matrix(g, r, c), random_matrix(g, r, c)};
}

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline double err(const DualMatrix& x, const DualMatrix& y) { return ddz::rel_error(x, y); }
inline double err(const ComplexMatrix& x, const ComplexMatrix& y) { return ddz::rel_error(x, y); }

}  // namespace ref
