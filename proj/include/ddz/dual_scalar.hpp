#pragma once

// Dual complex numbers a + ε a0 with ε² = 0.

#include <cmath>
#include <complex>
#include <ostream>

#include "ddz/errors.hpp"
#include "ddz/tolerances.hpp"

namespace ddz {

using cplx = std::complex<double>;

struct DualScalar {
    cplx st{};   // standard part
    cplx inf{};  // infinitesimal part

    DualScalar() = default;
    DualScalar(cplx standard, cplx infinitesimal = {}) : st(standard), inf(infinitesimal) {
        if (!finite(st) || !finite(inf)) {
            throw std::invalid_argument("DualScalar: non-finite component");
        }
    }
    DualScalar(double standard) : DualScalar(cplx(standard)) {}

    static DualScalar epsilon() { return {0.0, 1.0}; }

    bool operator==(const DualScalar&) const = default;

    DualScalar operator-() const { return {-st, -inf}; }
    DualScalar operator+(const DualScalar& o) const { return {st + o.st, inf + o.inf}; }
    DualScalar operator-(const DualScalar& o) const { return {st - o.st, inf - o.inf}; }
    DualScalar operator*(const DualScalar& o) const { return {st * o.st, st * o.inf + inf * o.st}; }

    bool appreciable(double scale = 1.0, const Tolerances& tol = {}) const {
        return std::abs(st) > tol.appreciable * scale;
    }

private:
    static bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
};

inline DualScalar mul(const DualScalar& x, const DualScalar& y) { return x * y; }

/// (a + ε a0)^{-1} = a^{-1} - ε a^{-1} a0 a^{-1}
inline DualScalar inverse(const DualScalar& x, double scale = 1.0, const Tolerances& tol = {}) {
    if (!x.appreciable(scale, tol)) {
        throw NotAppreciable("inverse: dual number is not appreciable");
    }
    const cplx r = 1.0 / x.st;
    return {r, -r * x.inf * r};
}

/// Dual Drazin inverse of a 1x1 dual matrix: the inverse when appreciable,
/// zero for zero, and undefined for a nonzero pure infinitesimal.
inline DualScalar scalar_dual_drazin(const DualScalar& x, double scale = 1.0,
                                     const Tolerances& tol = {}) {
    if (x.appreciable(scale, tol)) {
        return inverse(x, scale, tol);
    }
    if (std::abs(x.inf) > tol.appreciable * scale) {
        throw NotDualDrazinInvertible("scalar_dual_drazin: nonzero pure infinitesimal");
    }
    return {};
}

inline std::ostream& operator<<(std::ostream& os, const DualScalar& x) {
    return os << x.st << " + ε" << x.inf;
}

}  // namespace ddz
