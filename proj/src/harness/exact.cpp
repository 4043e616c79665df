#include <cmath>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ddz/errors.hpp"
#include "ddz/harness.hpp"

namespace ddz {

namespace {

using boost::multiprecision::cpp_rational;

struct GaussQ {
    cpp_rational re, im;

    bool zero() const { return re == 0 && im == 0; }
    GaussQ operator+(const GaussQ& o) const { return {re + o.re, im + o.im}; }
    GaussQ operator-(const GaussQ& o) const { return {re - o.re, im - o.im}; }
    GaussQ operator*(const GaussQ& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussQ inverse() const {
        const cpp_rational d = re * re + im * im;
        return {re / d, -im / d};
    }
};

// element of Q(i)[ε]/(ε²)
struct DualQ {
    GaussQ st, inf;

    bool zero() const { return st.zero() && inf.zero(); }
    bool unit() const { return !st.zero(); }
    DualQ operator-(const DualQ& o) const { return {st - o.st, inf - o.inf}; }
    DualQ operator*(const DualQ& o) const { return {st * o.st, st * o.inf + inf * o.st}; }
    DualQ inverse() const {
        const GaussQ r = st.inverse();
        return {r, GaussQ{} - r * inf * r};
    }
};

cpp_rational exact(double v) {
    if (!std::isfinite(v) || v != std::round(v) || std::abs(v) > 9.0e15) {
        throw InexactInput("smith_rank_oracle: entry " + std::to_string(v) +
                           " is not an exactly representable integer");
    }
    return cpp_rational(static_cast<long long>(v));
}

GaussQ exact(cplx z) { return {exact(z.real()), exact(z.imag())}; }

using Grid = std::vector<std::vector<DualQ>>;

// finds a pivot in rows/cols >= k satisfying pred, moves it to (k, k)
template <typename Pred>
bool bring_pivot(Grid& g, std::size_t k, Pred pred) {
    const std::size_t rows = g.size();
    const std::size_t cols = rows ? g[0].size() : 0;
    for (std::size_t i = k; i < rows; ++i) {
        for (std::size_t j = k; j < cols; ++j) {
            if (pred(g[i][j])) {
                std::swap(g[i], g[k]);
                for (auto& row : g) {
                    std::swap(row[j], row[k]);
                }
                return true;
            }
        }
    }
    return false;
}

}  // namespace

SmithRank smith_rank_oracle(const DualMatrix& x) {
    const auto rows = static_cast<std::size_t>(x.rows());
    const auto cols = static_cast<std::size_t>(x.cols());
    Grid g(rows, std::vector<DualQ>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            g[i][j] = {exact(x.st(i, j)), exact(x.inf(i, j))};
        }
    }

    SmithRank out;
    std::size_t k = 0;
    const std::size_t limit = std::min(rows, cols);

    // unit pivots: clear the pivot's row and column completely
    while (k < limit && bring_pivot(g, k, [](const DualQ& v) { return v.unit(); })) {
        const DualQ inv = g[k][k].inverse();
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (g[i][k].zero()) {
                continue;
            }
            const DualQ f = g[i][k] * inv;
            for (std::size_t j = k; j < cols; ++j) {
                g[i][j] = g[i][j] - f * g[k][j];
            }
        }
        ++out.r;
        ++k;
    }

    // the rest is ε K: count the rank of K over Q(i)
    while (k < limit && bring_pivot(g, k, [](const DualQ& v) { return !v.inf.zero(); })) {
        const GaussQ inv = g[k][k].inf.inverse();
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (g[i][k].inf.zero()) {
                continue;
            }
            const GaussQ f = g[i][k].inf * inv;
            for (std::size_t j = k; j < cols; ++j) {
                g[i][j].inf = g[i][j].inf - f * g[k][j].inf;
            }
        }
        ++out.s;
        ++k;
    }
    return out;
}

}  // namespace ddz
