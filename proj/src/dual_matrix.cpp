#include "ddz/dual_matrix.hpp"

#include <algorithm>
#include <string>

#include "ddz/errors.hpp"

namespace ddz {

namespace {

std::string shape(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DualMatrix::DualMatrix(ComplexMatrix standard)
    : st(std::move(standard)), inf(ComplexMatrix::Zero(st.rows(), st.cols())) {}

DualMatrix::DualMatrix(ComplexMatrix standard, ComplexMatrix infinitesimal)
    : st(std::move(standard)), inf(std::move(infinitesimal)) {
    if (st.rows() != inf.rows() || st.cols() != inf.cols()) {
        throw ShapeMismatch("DualMatrix: standard part " + shape(st) +
                            " vs infinitesimal part " + shape(inf));
    }
    if (!st.allFinite() || !inf.allFinite()) {
        throw std::invalid_argument("DualMatrix: non-finite entry");
    }
}

DualMatrix DualMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
    return {ComplexMatrix::Zero(rows, cols), ComplexMatrix::Zero(rows, cols)};
}

DualMatrix DualMatrix::identity(Eigen::Index n) {
    return DualMatrix(ComplexMatrix::Identity(n, n));
}

DualMatrix DualMatrix::eps(ComplexMatrix x) {
    ComplexMatrix z = ComplexMatrix::Zero(x.rows(), x.cols());
    return {std::move(z), std::move(x)};
}

DualMatrix DualMatrix::block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr,
                             Eigen::Index nc) const {
    return {st.block(r0, c0, nr, nc), inf.block(r0, c0, nr, nc)};
}

void DualMatrix::set_block(Eigen::Index r0, Eigen::Index c0, const DualMatrix& b) {
    st.block(r0, c0, b.rows(), b.cols()) = b.st;
    inf.block(r0, c0, b.rows(), b.cols()) = b.inf;
}

DualMatrix& DualMatrix::operator+=(const DualMatrix& o) {
    if (rows() != o.rows() || cols() != o.cols()) {
        throw ShapeMismatch("add: " + shape(st) + " + " + shape(o.st));
    }
    st += o.st;
    inf += o.inf;
    return *this;
}

DualMatrix& DualMatrix::operator-=(const DualMatrix& o) {
    if (rows() != o.rows() || cols() != o.cols()) {
        throw ShapeMismatch("subtract: " + shape(st) + " - " + shape(o.st));
    }
    st -= o.st;
    inf -= o.inf;
    return *this;
}

double DualMatrix::norm() const {
    return std::sqrt(st.squaredNorm() + inf.squaredNorm());
}

DualMatrix operator+(DualMatrix a, const DualMatrix& b) { return a += b; }
DualMatrix operator-(DualMatrix a, const DualMatrix& b) { return a -= b; }
DualMatrix operator*(const DualMatrix& a, const DualMatrix& b) { return dmul(a, b); }

DualMatrix operator*(const DualScalar& s, const DualMatrix& a) {
    return {s.st * a.st, s.st * a.inf + s.inf * a.st};
}

DualMatrix operator*(const DualMatrix& a, const DualScalar& s) { return s * a; }

DualMatrix dmul(const DualMatrix& x, const DualMatrix& y) {
    if (x.cols() != y.rows()) {
        throw ShapeMismatch("dmul: " + shape(x.st) + " * " + shape(y.st));
    }
    return {x.st * y.st, x.st * y.inf + x.inf * y.st};
}

DualMatrix dpow(const DualMatrix& x, int k) {
    if (!x.square()) {
        throw ShapeMismatch("dpow: non-square " + shape(x.st));
    }
    if (k < 0) {
        throw std::invalid_argument("dpow: negative exponent");
    }
    DualMatrix result = DualMatrix::identity(x.rows());
    DualMatrix base = x;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

ComplexMatrix power_inf_sum(const DualMatrix& x, int k) {
    const auto n = x.rows();
    std::vector<ComplexMatrix> powers{ComplexMatrix::Identity(n, n)};
    for (int i = 1; i < k; ++i) {
        powers.push_back(powers.back() * x.st);
    }
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (int i = 1; i <= k; ++i) {
        sum += powers[k - i] * x.inf * powers[i - 1];
    }
    return sum;
}

ComplexMatrix assemble(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols()) {
        throw ShapeMismatch("assemble: blocks " + shape(a) + ", " + shape(b) + ", " + shape(c) +
                            ", " + shape(d) + " do not tile");
    }
    ComplexMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.topRightCorner(b.rows(), b.cols()) = b;
    m.bottomLeftCorner(c.rows(), c.cols()) = c;
    m.bottomRightCorner(d.rows(), d.cols()) = d;
    return m;
}

DualMatrix assemble(const DualMatrix& a, const DualMatrix& b, const DualMatrix& c,
                    const DualMatrix& d) {
    return {assemble(a.st, b.st, c.st, d.st), assemble(a.inf, b.inf, c.inf, d.inf)};
}

DualMatrix block_diag(const std::vector<DualMatrix>& blocks) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    DualMatrix m = DualMatrix::zero(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

ComplexMatrix phi_embed(const DualMatrix& x) {
    ComplexMatrix zero = ComplexMatrix::Zero(x.rows(), x.cols());
    return assemble(x.st, x.inf, zero, x.st);
}

double rel_error(const DualMatrix& x, const DualMatrix& y) {
    return (x - y).norm() / std::max(1.0, y.norm());
}

double rel_error(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw ShapeMismatch("rel_error: " + shape(x) + " vs " + shape(y));
    }
    return (x - y).norm() / std::max(1.0, y.norm());
}

int numerical_rank(const ComplexMatrix& a, const Tolerances& tol, double scale) {
    if (a.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double ref = scale > 0.0 ? std::max(scale, sv(0)) : sv(0);
    const double threshold = static_cast<double>(std::max(a.rows(), a.cols())) * tol.rank * ref;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            ++r;
        }
    }
    return r;
}

PowerIndex matrix_index(const ComplexMatrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw ShapeMismatch("matrix_index: non-square " + shape(a));
    }
    // Staircase deflation instead of powers: with V = [R N], N spanning ker A,
    // V* A V = [[0 X], [0 A2]] and rank(A^k) = rank(A2^{k-1}), so each step
    // with a nontrivial kernel adds one to the index.  Every rank decision is
    // made against ||A||, so high-index inputs do not lose their core.
    const double scale = a.norm();
    ComplexMatrix cur = a;
    int index = 0;
    while (cur.rows() > 0) {
        const Eigen::JacobiSVD<ComplexMatrix> svd(cur, Eigen::ComputeFullV);
        const int r = numerical_rank(cur, tol, scale);
        if (r == cur.rows()) {
            break;
        }
        ++index;
        const ComplexMatrix range = svd.matrixV().leftCols(r);
        cur = range.adjoint() * cur * range;
    }
    return {index, static_cast<int>(cur.rows())};
}

int rank_std(const DualMatrix& x, const Tolerances& tol) { return numerical_rank(x.st, tol); }

int rank_dual(const DualMatrix& x, const Tolerances& tol) {
    return numerical_rank(phi_embed(x), tol) - numerical_rank(x.st, tol);
}

IndexReport indices(const DualMatrix& x, const Tolerances& tol) {
    if (!x.square()) {
        throw ShapeMismatch("indices: non-square " + shape(x.st));
    }
    IndexReport report;
    report.ind_std = index_of(x.st, tol);
    report.ind_phi = index_of(phi_embed(x), tol);
    for (int t = report.ind_std; t <= 2 * report.ind_std; ++t) {
        const DualMatrix xt = dpow(x, t);
        if (rank_std(xt, tol) == rank_dual(xt, tol)) {
            report.ind_dual = t;
            break;
        }
    }
    return report;
}

}  // namespace ddz
