#include "ddz/drazin.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "ddz/errors.hpp"

namespace ddz {

namespace {

using LongComplexMatrix =
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw ShapeMismatch(std::string(what) + ": non-square " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
    }
}

// Swap the adjacent diagonal entries j, j+1 of the upper triangular T,
// keeping A = U T U*.  The first column of the rotation is the eigenvector
// of [[t11, t12], [0, t22]] for t22.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, Eigen::Index j) {
    const cplx t11 = t(j, j);
    const cplx t12 = t(j, j + 1);
    const cplx t22 = t(j + 1, j + 1);
    cplx v1 = t12;
    cplx v2 = t22 - t11;
    const double len = std::hypot(std::abs(v1), std::abs(v2));
    if (len == 0.0) {
        return;
    }
    v1 /= len;
    v2 /= len;
    Eigen::Matrix2cd g;
    g << v1, -std::conj(v2), v2, std::conj(v1);
    t.middleRows(j, 2) = g.adjoint() * t.middleRows(j, 2);
    t.middleCols(j, 2) = t.middleCols(j, 2) * g;
    u.middleCols(j, 2) = u.middleCols(j, 2) * g;
    t(j + 1, j) = 0.0;
}

}  // namespace

DrazinData drazin_complex(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "drazin_complex");
    const auto n = a.rows();
    DrazinData out;
    out.proj_e = ComplexMatrix::Zero(n, n);
    out.proj_pi = ComplexMatrix::Identity(n, n);
    if (n == 0) {
        out.ad = ComplexMatrix(0, 0);
        return out;
    }

    const PowerIndex pi = matrix_index(a, tol);
    out.index = pi.index;
    const Eigen::Index zeros = n - pi.core_rank;

    if (zeros == 0) {
        out.ad = a.partialPivLu().inverse();
    } else if (zeros == n) {
        out.ad = ComplexMatrix::Zero(n, n);
    } else {
        Eigen::ComplexSchur<ComplexMatrix> schur(a);
        ComplexMatrix t = schur.matrixT();
        ComplexMatrix u = schur.matrixU();

        // the `zeros` eigenvalues of least modulus form the nilpotent cluster
        std::vector<Eigen::Index> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
            return std::abs(t(x, x)) < std::abs(t(y, y));
        });
        std::vector<bool> in_cluster(n, false);
        for (Eigen::Index i = 0; i < zeros; ++i) {
            in_cluster[order[i]] = true;
        }
        // bubble cluster members to the trailing block
        bool moved = true;
        while (moved) {
            moved = false;
            for (Eigen::Index j = 0; j + 1 < n; ++j) {
                if (in_cluster[j] && !in_cluster[j + 1]) {
                    swap_adjacent(t, u, j);
                    std::swap(in_cluster[j], in_cluster[j + 1]);
                    moved = true;
                }
            }
        }

        const Eigen::Index p = n - zeros;
        const ComplexMatrix t11 = t.topLeftCorner(p, p);
        const ComplexMatrix t12 = t.topRightCorner(p, zeros);
        const ComplexMatrix t22 = t.bottomRightCorner(zeros, zeros);
        const ComplexMatrix t11_inv = t11.triangularView<Eigen::Upper>().solve(
            ComplexMatrix::Identity(p, p));

        // q: smallest power at which T22 is numerically zero, capped at its size
        const double scale = std::max(a.norm(), 1.0);
        Eigen::Index q = zeros;
        {
            ComplexMatrix power = t22;
            double bound = scale;
            for (Eigen::Index i = 1; i <= zeros; ++i) {
                if (power.norm() <= tol.cluster * bound) {
                    q = i;
                    break;
                }
                power = power * t22;
                bound *= scale;
            }
        }

        ComplexMatrix s = ComplexMatrix::Zero(p, zeros);
        ComplexMatrix left = t11_inv * t11_inv;  // T11^{-(i+2)}
        ComplexMatrix right = ComplexMatrix::Identity(zeros, zeros);  // T22^i
        for (Eigen::Index i = 0; i < q; ++i) {
            s += left * t12 * right;
            left = left * t11_inv;
            right = right * t22;
        }

        ComplexMatrix core = ComplexMatrix::Zero(n, n);
        core.topLeftCorner(p, p) = t11_inv;
        core.topRightCorner(p, zeros) = s;
        out.ad = u * core * u.adjoint();
    }

    out.proj_e = a * out.ad;
    out.proj_pi = ComplexMatrix::Identity(n, n) - out.proj_e;
    return out;
}

ComplexMatrix drazin_oracle(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "drazin_oracle");
    const auto n = a.rows();
    if (n == 0) {
        return ComplexMatrix(0, 0);
    }
    const PowerIndex pi = matrix_index(a, tol);
    if (pi.core_rank == 0) {
        return ComplexMatrix::Zero(n, n);
    }
    const LongComplexMatrix al = a.cast<std::complex<long double>>();
    LongComplexMatrix ak = LongComplexMatrix::Identity(n, n);
    for (int i = 0; i < pi.index; ++i) {
        ak = ak * al;
    }
    LongComplexMatrix big = ak * ak * al;  // A^{2k+1}

    // rank(A^{2k+1}) = rank(A^k): keep exactly that many singular values
    Eigen::JacobiSVD<LongComplexMatrix> svd(big, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    LongComplexMatrix pinv = LongComplexMatrix::Zero(n, n);
    for (int i = 0; i < pi.core_rank; ++i) {
        pinv += svd.matrixV().col(i) * (1.0L / sv(i)) * svd.matrixU().col(i).adjoint();
    }
    const LongComplexMatrix result = ak * pinv * ak;
    return result.cast<cplx>();
}

ComplexMatrix group_inverse(const ComplexMatrix& a, const Tolerances& tol) {
    DrazinData d = drazin_complex(a, tol);
    if (d.index > 1) {
        throw IndexTooLarge("group_inverse: index " + std::to_string(d.index) + " > 1");
    }
    return d.ad;
}

ExistenceResult dual_exists(const DualMatrix& x, const Tolerances& tol) {
    require_square(x.st, "dual_exists");
    const DrazinData d = drazin_complex(x.st, tol);
    ExistenceResult r;
    r.index = d.index;
    r.m = power_inf_sum(x, d.index);
    const ComplexMatrix sandwich = d.proj_pi * r.m * d.proj_pi;
    r.residual = sandwich.norm() / (1.0 + r.m.norm());
    r.exists = r.residual <= tol.existence;
    return r;
}

std::array<double, 3> defining_residuals(const DualMatrix& x, const DualMatrix& y, int k) {
    const DualMatrix xk = dpow(x, k);
    const double nx = x.norm();
    const double ny = y.norm();
    return {(xk * y * x - xk).norm() / std::max(1.0, xk.norm() * ny * nx),
            (y * x * y - y).norm() / std::max(1.0, ny * nx * ny),
            (x * y - y * x).norm() / std::max(1.0, nx * ny)};
}

DualDrazinData dual_drazin(const DualMatrix& x, const Tolerances& tol) {
    require_square(x.st, "dual_drazin");
    const DrazinData d = drazin_complex(x.st, tol);
    const auto n = x.rows();
    const int k = d.index;

    DualDrazinData out;
    out.index = k;
    out.m_matrix = power_inf_sum(x, k);
    const double residual =
        (d.proj_pi * out.m_matrix * d.proj_pi).norm() / (1.0 + out.m_matrix.norm());
    if (residual > tol.existence) {
        throw NotDualDrazinInvertible("dual_drazin: (I - AA^D) M (I - AA^D) != 0 (relative residual " +
                                      std::to_string(residual) + ")");
    }
    out.exists = true;

    const ComplexMatrix& ad = d.ad;
    const ComplexMatrix& a0 = x.inf;
    ComplexMatrix ar = -ad * a0 * ad;
    ComplexMatrix ad_pow = ad * ad;                       // (A^D)^{i+2}
    ComplexMatrix a_pow = ComplexMatrix::Identity(n, n);  // A^i
    for (int i = 0; i < k; ++i) {
        ar += ad_pow * a0 * a_pow * d.proj_pi;
        ar += d.proj_pi * a_pow * a0 * ad_pow;
        ad_pow = ad_pow * ad;
        a_pow = a_pow * x.st;
    }
    out.inverse = DualMatrix(ad, ar);
    out.residuals = defining_residuals(x, out.inverse, k);
    return out;
}

DualMatrix dual_drazin_power(const DualMatrix& x, int k, const Tolerances& tol) {
    if (k < 0) {
        throw std::invalid_argument("dual_drazin_power: negative exponent");
    }
    const DualDrazinData d = dual_drazin(x, tol);
    const auto n = x.rows();
    std::vector<ComplexMatrix> ad_pow{ComplexMatrix::Identity(n, n)};
    for (int i = 1; i <= k; ++i) {
        ad_pow.push_back(ad_pow.back() * d.inverse.st);
    }
    ComplexMatrix inf = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < k; ++i) {
        inf += ad_pow[i] * d.inverse.inf * ad_pow[k - i - 1];
    }
    return {ad_pow[k], inf};
}

DualSpectral::DualSpectral(const DualMatrix& x, const Tolerances& tol) : x_(x) {
    const DualDrazinData d = dual_drazin(x, tol);
    d_ = d.inverse;
    index_ = d.index;
    e_ = x_ * d_;
    pi_ = DualMatrix::identity(x_.rows()) - e_;
    powers_.push_back(DualMatrix::identity(x_.rows()));
    dpowers_.push_back(DualMatrix::identity(x_.rows()));
}

const DualMatrix& DualSpectral::pow(int i) const {
    while (static_cast<int>(powers_.size()) <= i) {
        powers_.push_back(powers_.back() * x_);
    }
    return powers_[i];
}

const DualMatrix& DualSpectral::dpow(int s) const {
    while (static_cast<int>(dpowers_.size()) <= s) {
        dpowers_.push_back(dpowers_.back() * d_);
    }
    return dpowers_[s];
}

}  // namespace ddz
