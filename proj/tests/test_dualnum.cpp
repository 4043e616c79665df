#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ddz/dual_scalar.hpp"

using ddz::cplx;
using ddz::DualScalar;

namespace {

DualScalar draw(std::mt19937_64& g) {
    std::uniform_int_distribution<int> d(-5, 5);
    return {cplx(d(g), d(g)), cplx(d(g), d(g))};
}

// a + ε a0 as the 2x2 matrix [[a, a0], [0, a]]
std::array<cplx, 2> via_matrix(const DualScalar& x, const DualScalar& y) {
    return {x.st * y.st, x.st * y.inf + x.inf * y.st};
}

}  // namespace

TEST_CASE("multiplication") {
    CHECK(DualScalar(1.0, 2.0) * DualScalar(3.0, 4.0) == DualScalar(3.0, 10.0));
    CHECK(DualScalar::epsilon() * DualScalar::epsilon() == DualScalar(0.0));
    const DualScalar x(cplx(1, -2), cplx(0.5, 3));
    CHECK(x * DualScalar(1.0) == x);
    CHECK(mul(x, DualScalar(1.0)) == x);
}

TEST_CASE("inverse") {
    const DualScalar r = inverse(DualScalar(2.0, 1.0));
    CHECK(r.st == cplx(0.5));
    CHECK(r.inf == cplx(-0.25));
    CHECK(inverse(DualScalar(1.0)) == DualScalar(1.0));
    CHECK_THROWS_AS(inverse(DualScalar::epsilon()), ddz::NotAppreciable);
    CHECK_THROWS_AS(inverse(DualScalar(0.0)), ddz::NotAppreciable);
}

TEST_CASE("scalar dual Drazin inverse") {
    CHECK(scalar_dual_drazin(DualScalar(0.0)) == DualScalar(0.0));
    CHECK(scalar_dual_drazin(DualScalar(2.0, 1.0)) == DualScalar(0.5, -0.25));
    CHECK_THROWS_AS(scalar_dual_drazin(DualScalar::epsilon()), ddz::NotDualDrazinInvertible);
}

TEST_CASE("non-finite components are rejected") {
    CHECK_THROWS(DualScalar(cplx(std::nan(""), 0.0)));
    CHECK_THROWS(DualScalar(1.0, cplx(INFINITY, 0.0)));
}

TEST_CASE("ring laws on random Gaussian integers") {
    std::mt19937_64 g(11);
    for (int t = 0; t < 500; ++t) {
        const DualScalar x = draw(g), y = draw(g), z = draw(g);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        const auto m = via_matrix(x, y);
        CHECK((x * y).st == m[0]);
        CHECK((x * y).inf == m[1]);
    }
}

TEST_CASE("inverse times value is one") {
    std::mt19937_64 g(12);
    for (int t = 0; t < 500; ++t) {
        const DualScalar x = draw(g);
        if (!x.appreciable()) continue;
        const DualScalar p = inverse(x) * x;
        CHECK(std::abs(p.st - 1.0) < 1e-14);
        CHECK(std::abs(p.inf) < 1e-13);
        CHECK(scalar_dual_drazin(x) == inverse(x));
    }
}
