#include <algorithm>
#include <functional>
#include <stdexcept>

#include "ddz/errors.hpp"
#include "ddz/harness.hpp"

namespace ddz {

// ---- randomness ------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

int IntRng::uniform(int lo, int hi) {
    if (hi <= lo) {
        return lo;
    }
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

bool IntRng::coin(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
}

cplx IntRng::gaussian(int scale) {
    const double re = uniform(-scale, scale);
    if (coin()) {
        return {re, 0.0};
    }
    return {re, static_cast<double>(uniform(-scale, scale))};
}

cplx IntRng::unit() {
    static const cplx units[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    return units[uniform(0, 3)];
}

ComplexMatrix IntRng::matrix(Eigen::Index rows, Eigen::Index cols, int scale) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = gaussian(scale);
        }
    }
    return m;
}

DualMatrix IntRng::dual(Eigen::Index rows, Eigen::Index cols, int scale) {
    ComplexMatrix st = matrix(rows, cols, scale);
    ComplexMatrix inf = matrix(rows, cols, scale);
    return {std::move(st), std::move(inf)};
}

namespace {

constexpr int kMaxAttempts = 200;

// Ŝ = S (I + εK) and Ŝ⁻¹ = (I - εK) S⁻¹, S a product of elementary
// matrices I + c e_i e_j^T with c a unit.
struct Similarity {
    DualMatrix s, inv;
};

Similarity gen_similarity(IntRng& rng, Eigen::Index n) {
    ComplexMatrix s = ComplexMatrix::Identity(n, n);
    ComplexMatrix inv = ComplexMatrix::Identity(n, n);
    // few elementary factors keep entries (and conditioning) small
    const int ops = n > 1 ? rng.uniform(static_cast<int>(n) / 2 + 1, static_cast<int>(n)) : 0;
    for (int op = 0; op < ops; ++op) {
        const int i = rng.uniform(0, static_cast<int>(n) - 1);
        int j = rng.uniform(0, static_cast<int>(n) - 2);
        if (j >= i) {
            ++j;
        }
        const cplx c = rng.unit();
        s.col(j) += c * s.col(i);
        inv.row(i) -= c * inv.row(j);
    }
    const ComplexMatrix k = rng.matrix(n, n, 1);
    return {DualMatrix(s, s * k), DualMatrix(inv, -k * inv)};
}

// invertible upper triangular core with small integer eigenvalues
DualMatrix gen_core(IntRng& rng, Eigen::Index p, int scale) {
    static const cplx diag[] = {{1, 0}, {-1, 0}, {2, 0}, {-2, 0}, {3, 0}, {-3, 0}, {0, 1}, {0, -2}};
    ComplexMatrix st = ComplexMatrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        st(i, i) = diag[rng.uniform(0, 7)];
        for (Eigen::Index j = i + 1; j < p; ++j) {
            st(i, j) = rng.gaussian(1);
        }
    }
    return {st, rng.matrix(p, p, scale)};
}

std::vector<int> gen_chains(IntRng& rng, int q, bool single) {
    if (q == 0) {
        return {};
    }
    if (single) {
        return {q};
    }
    std::vector<int> chains;
    int left = q;
    while (left > 0) {
        const int len = rng.uniform(1, left);
        chains.push_back(len);
        left -= len;
    }
    return chains;
}

// N̂ = N + εY, both strictly upper triangular inside each chain, with a
// nonzero superdiagonal in N; N̂^L = 0 exactly for the longest chain L.
DualMatrix gen_nilpotent(IntRng& rng, const std::vector<int>& chains, int scale) {
    int q = 0;
    for (int c : chains) {
        q += c;
    }
    ComplexMatrix n = ComplexMatrix::Zero(q, q);
    ComplexMatrix y = ComplexMatrix::Zero(q, q);
    int o = 0;
    for (int len : chains) {
        for (int i = 0; i < len; ++i) {
            for (int j = i + 1; j < len; ++j) {
                n(o + i, o + j) = (j == i + 1) ? rng.unit() * cplx(rng.uniform(1, 2)) : rng.gaussian(1);
                y(o + i, o + j) = rng.gaussian(scale);
            }
        }
        o += len;
    }
    return {n, y};
}

DualScalar gen_dual_scalar(IntRng& rng, int scale, bool appreciable) {
    cplx st = rng.gaussian(scale);
    if (appreciable && st == cplx(0.0)) {
        st = rng.unit();
    }
    return {st, rng.gaussian(scale)};
}

DualScalar nonzero_dual_scalar(IntRng& rng, int scale) {
    for (;;) {
        const DualScalar s{rng.gaussian(scale), rng.gaussian(scale)};
        if (!(s == DualScalar{})) {
            return s;
        }
    }
}

DualMatrix nonzero_dual(IntRng& rng, Eigen::Index rows, Eigen::Index cols, int scale) {
    for (;;) {
        DualMatrix m = rng.dual(rows, cols, scale);
        if (m.norm() != 0.0) {
            return m;
        }
    }
}

DualMatrix pure_inf(IntRng& rng, Eigen::Index rows, Eigen::Index cols, int scale) {
    for (;;) {
        ComplexMatrix m = rng.matrix(rows, cols, scale);
        if (m.norm() != 0.0) {
            return DualMatrix::eps(std::move(m));
        }
    }
}

// ĉ0 I + ĉ1 N̂ + ĉ2 N̂² + ...; with nilpotent_only the constant term is 0
// and ĉ1 has a nonzero standard part
DualMatrix gen_polynomial(IntRng& rng, const DualMatrix& nil, bool nilpotent_only, int scale) {
    const auto q = nil.rows();
    DualMatrix out = DualMatrix::zero(q, q);
    DualMatrix power = DualMatrix::identity(q);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(q, 3); ++i) {
        DualScalar c = gen_dual_scalar(rng, scale, (i == 0 && !nilpotent_only) ||
                                                       (i == 1 && nilpotent_only));
        if (i == 0 && nilpotent_only) {
            c = DualScalar{};
        }
        out += c * power;
        power = power * nil;
    }
    return out;
}

int draw_dim(const GenConfig& cfg, IntRng& rng, int trial) {
    if (trial == 0) {
        return cfg.dim_min;
    }
    if (trial == 1) {
        return cfg.dim_max;
    }
    return rng.uniform(cfg.dim_min, cfg.dim_max);
}

DualMatrix conj(const Similarity& sim, const DualMatrix& core) { return sim.s * core * sim.inv; }

// Â = Ŝ (P̂ ⊕ N̂) Ŝ⁻¹ kept together with its basis
struct SpectralModel {
    Similarity sim;
    Eigen::Index p = 0, q = 0;
    DualMatrix core, nil;
    DualMatrix a;
};

SpectralModel gen_model(IntRng& rng, Eigen::Index p, Eigen::Index q, bool single_chain, int scale) {
    SpectralModel m;
    m.p = p;
    m.q = q;
    m.sim = gen_similarity(rng, p + q);
    m.core = gen_core(rng, p, scale);
    m.nil = gen_nilpotent(rng, gen_chains(rng, static_cast<int>(q), single_chain), scale);
    m.a = conj(m.sim, block_diag({m.core, m.nil}));
    return m;
}

bool member(const DualMatrix& x) { return dual_exists(x).exists; }

// In DC_z and not so ill-conditioned that the reference inverse itself
// loses the digits the comparison needs.
constexpr double kMaxCondition = 1e6;

bool admissible(const DualMatrix& m) {
    if (!member(m)) {
        return false;
    }
    const DrazinData d = drazin_complex(m.st);
    return m.st.norm() * d.ad.norm() <= kMaxCondition;
}

BlockInstance block(BlockTheorem t, std::initializer_list<std::pair<const std::string, DualMatrix>> b) {
    BlockInstance inst;
    inst.theorem = t;
    inst.blocks = b;
    return inst;
}

// ---- block theorems ----------------------------------------------------------

// BA in DC_z
BlockInstance gen_cline(IntRng& rng, int d, int scale) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const int stratum = rng.uniform(0, 2);
        if (stratum == 0) {
            const int n = rng.uniform(1, d);
            const int m = rng.uniform(n, d + 1);
            BlockInstance inst = block(BlockTheorem::Cline,
                                       {{"A", rng.dual(m, n, scale)}, {"B", rng.dual(n, m, scale)}});
            if (member(inst.at("B") * inst.at("A"))) {
                return inst;
            }
            continue;
        }
        // B̂Â = Û X̂ Û⁻¹ with X̂ a DC_z member
        const int n = d;
        const DualMatrix x = gen_dcz(rng, n, true, scale);
        const Similarity u = gen_similarity(rng, n);
        if (stratum == 1) {
            return block(BlockTheorem::Cline, {{"A", x * u.inv}, {"B", u.s}});
        }
        const int extra = rng.uniform(1, 2);
        DualMatrix a = DualMatrix::zero(n + extra, n);
        a.set_block(0, 0, x * u.inv);
        a.set_block(n, 0, rng.dual(extra, n, scale));
        DualMatrix b = DualMatrix::zero(n, n + extra);
        b.set_block(0, 0, u.s);
        return block(BlockTheorem::Cline, {{"A", a}, {"B", b}});
    }
    throw GenerationFailed("cline: no admissible pair found");
}

BlockInstance gen_tri(IntRng& rng, BlockTheorem t, int d, int scale) {
    const int p = rng.uniform(1, d);
    const int q = rng.uniform(1, d);
    return block(t, {{"A", gen_dcz(rng, p, true, scale)},
                     {"B", rng.dual(p, q, scale)},
                     {"D", gen_dcz(rng, q, true, scale)}});
}

BlockInstance gen_sum(IntRng& rng, int d, bool violate, int scale) {
    if (violate) {
        const int n = rng.uniform(std::max(1, d / 2), d);
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const DualMatrix p = gen_dcz(rng, n, true, scale);
            const DualMatrix q = gen_dcz(rng, n, true, scale);
            if ((p * q).norm() != 0.0) {
                return block(BlockTheorem::SumPQ0, {{"P", p}, {"Q", q}});
            }
        }
        throw GenerationFailed("sum: could not violate PQ = 0");
    }
    // P' = [[P1, 0], [P21, 0]], Q' = [[0, 0], [Q21, Q2]] so P'Q' = 0
    const int n1 = rng.uniform(1, std::max(1, d / 2 + 1));
    const int n2 = rng.uniform(1, std::max(1, d / 2 + 1));
    const Similarity s = gen_similarity(rng, n1 + n2);
    DualMatrix p = DualMatrix::zero(n1 + n2, n1 + n2);
    DualMatrix q = p;
    const DualMatrix p1 = gen_dcz(rng, n1, true, scale);
    const DualMatrix q2 = gen_dcz(rng, n2, true, scale);
    p.set_block(0, 0, p1);
    q.set_block(n1, n1, q2);
    if (rng.coin(0.7)) {
        // P21 = W P1 and Q21 = -Q2 W' keep P' ~ P1 ⊕ 0 and Q' ~ 0 ⊕ Q2
        p.set_block(n1, 0, rng.dual(n2, n1, 1) * p1);
        q.set_block(n1, 0, q2 * rng.dual(n2, n1, 1) * DualScalar(-1.0));
    }
    return block(BlockTheorem::SumPQ0, {{"P", conj(s, p)}, {"Q", conj(s, q)}});
}

// shapes of the block split for the anti-triangular families: p (invertible
// part) and q >= 1 (nilpotent part), with q >= 2 when the polynomial has no
// constant term
struct Split {
    int p, q;
    bool nilpotent_poly;
};

Split draw_split(IntRng& rng, int d, bool need_p) {
    Split s{};
    s.q = rng.uniform(1, d);
    s.p = d - s.q;
    if (need_p && s.p == 0) {
        s.p = 1;
    }
    s.nilpotent_poly = s.q >= 2 && rng.coin(0.35);
    return s;
}

// Right: B' = [[0, 0], [B21, B22]], columns of B21 in ker N̂ (multiples of
// e1), B22 a polynomial in N̂.  Left: B' = [[0, B12], [0, B22]], rows of
// B12 multiples of e_q^T.
DualMatrix anti_triangular_core(IntRng& rng, const SpectralModel& m, Side side, bool nil_poly,
                                int scale) {
    const auto p = m.p;
    const auto q = m.q;
    if (side == Side::Right) {
        DualMatrix b21 = DualMatrix::zero(q, p);
        for (Eigen::Index j = 0; j < p; ++j) {
            b21.set(0, j, gen_dual_scalar(rng, scale, false));
        }
        DualMatrix out = DualMatrix::zero(p + q, p + q);
        out.set_block(p, 0, b21);
        out.set_block(p, p, gen_polynomial(rng, m.nil, nil_poly, scale));
        return out;
    }
    DualMatrix b12 = DualMatrix::zero(p, q);
    for (Eigen::Index i = 0; i < p; ++i) {
        b12.set(i, q - 1, gen_dual_scalar(rng, scale, false));
    }
    DualMatrix out = DualMatrix::zero(p + q, p + q);
    out.set_block(0, p, b12);
    out.set_block(p, p, gen_polynomial(rng, m.nil, nil_poly, scale));
    return out;
}

BlockInstance gen_abio(IntRng& rng, Side side, int d, bool violate, int scale) {
    const BlockTheorem t = side == Side::Right ? BlockTheorem::AbioRight : BlockTheorem::AbioLeft;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Split sp = draw_split(rng, d, violate);
        const SpectralModel m = gen_model(rng, sp.p, sp.q, true, scale);
        DualMatrix b = anti_triangular_core(rng, m, side, sp.nilpotent_poly, scale);
        if (violate) {
            // an entry in the invertible block breaks A A^e B = 0 (B A A^e = 0)
            b.set(0, 0, b(0, 0) + DualScalar(rng.unit()));
        }
        BlockInstance inst = block(t, {{"A", m.a}, {"B", conj(m.sim, b)}});
        if (violate == check_hypotheses(inst).all_pass()) {
            continue;
        }
        return inst;
    }
    throw GenerationFailed(std::string(to_string(t)) + ": generation failed");
}

BlockInstance gen_abco(IntRng& rng, Side side, int d, bool violate, int scale) {
    const BlockTheorem t = side == Side::Right ? BlockTheorem::AbcoRight : BlockTheorem::AbcoLeft;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Split sp = draw_split(rng, d, violate);
        const SpectralModel m = gen_model(rng, sp.p, sp.q, true, scale);
        const int p = sp.p;
        const int q = sp.q;
        const int r = q + rng.uniform(0, 2);
        const Similarity v = gen_similarity(rng, r);
        const DualMatrix x = anti_triangular_core(rng, m, side, sp.nilpotent_poly, scale);

        DualMatrix bp, cp;  // B' = Ŝ⁻¹ B̂ V̂⁻¹, C' = V̂ Ĉ Ŝ
        if (side == Side::Right) {
            // B' = [0; G], G = [I_q, 0]; C' = [H1 H2] with its top q rows from x
            bp = DualMatrix::zero(p + q, r);
            bp.set_block(p, 0, DualMatrix::identity(q));
            cp = rng.dual(r, p + q, scale);
            cp.set_block(0, 0, x.block(p, 0, q, p + q));
            if (violate) {
                bp.set(0, 0, DualScalar(rng.unit()));
            }
        } else {
            // C' = [0, G^T]; B' = [K1; K2] with its first q columns from x
            cp = DualMatrix::zero(r, p + q);
            cp.set_block(0, p, DualMatrix::identity(q));
            bp = rng.dual(p + q, r, scale);
            bp.set_block(0, 0, x.block(0, p, p + q, q));
            if (violate) {
                cp.set(0, 0, DualScalar(rng.unit()));
            }
        }
        BlockInstance inst = block(t, {{"A", m.a},
                                       {"B", m.sim.s * bp * v.s},
                                       {"C", v.inv * cp * m.sim.inv}});
        if (violate == check_hypotheses(inst).all_pass()) {
            continue;
        }
        return inst;
    }
    throw GenerationFailed(std::string(to_string(t)) + ": generation failed");
}

// BC in DC_z
BlockInstance gen_bipartite(IntRng& rng, int d, int scale) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const int stratum = rng.uniform(0, 2);
        if (stratum == 0) {
            const int n = rng.uniform(1, d);
            const int r = rng.uniform(n, d + 1);
            BlockInstance inst = block(BlockTheorem::Bipartite,
                                       {{"B", rng.dual(n, r, scale)}, {"C", rng.dual(r, n, scale)}});
            if (member(inst.at("B") * inst.at("C"))) {
                return inst;
            }
            continue;
        }
        const int n = d;
        const DualMatrix x = gen_dcz(rng, n, true, scale);
        const Similarity u = gen_similarity(rng, n);
        if (stratum == 1) {
            return block(BlockTheorem::Bipartite, {{"B", x * u.inv}, {"C", u.s}});
        }
        const int extra = rng.uniform(1, 2);
        DualMatrix b = DualMatrix::zero(n, n + extra);
        b.set_block(0, 0, x * u.inv);
        b.set_block(0, n, rng.dual(n, extra, scale));
        DualMatrix c = DualMatrix::zero(n + extra, n);
        c.set_block(0, 0, u.s);
        return block(BlockTheorem::Bipartite, {{"B", b}, {"C", c}});
    }
    throw GenerationFailed("bipartite: no admissible pair found");
}

// ---- graphs --------------------------------------------------------------------

// Makes v have a unit standard entry and returns ŵ with ŵ^T v̂ = 0 exactly.
// pure_inf: ŵ = ε w0 with w0 ⊥ v.
DualMatrix orthogonal_to(IntRng& rng, DualMatrix& v, bool pure_inf, int scale) {
    const auto n = v.rows();
    const int j = rng.uniform(0, static_cast<int>(n) - 1);
    v.st(j, 0) = 1.0;
    for (;;) {
        ComplexMatrix w = pure_inf ? ComplexMatrix::Zero(n, 1) : rng.matrix(n, 1, scale);
        ComplexMatrix w0 = rng.matrix(n, 1, scale);
        if (!pure_inf) {
            w(j, 0) = 0.0;
            w(j, 0) = -(w.transpose() * v.st)(0, 0);
        }
        w0(j, 0) = 0.0;
        w0(j, 0) = -((w.transpose() * v.inf)(0, 0) + (w0.transpose() * v.st)(0, 0));
        DualMatrix out(w, w0);
        if (out.norm() != 0.0 && (pure_inf || w.norm() != 0.0)) {
            return out;
        }
    }
}

// (x̂, ŷ) of length len with x̂^T ŷ = 0
std::pair<DualMatrix, DualMatrix> orthogonal_pair(IntRng& rng, int len, int scale) {
    if (len == 1 || rng.coin(0.25)) {
        // both pure infinitesimal: the product is ε² = 0
        return {pure_inf(rng, len, 1, scale), pure_inf(rng, len, 1, scale)};
    }
    DualMatrix y = nonzero_dual(rng, len, 1, scale);
    DualMatrix x = orthogonal_to(rng, y, rng.coin(0.3), scale);
    return {x, y};
}

// Two strata: ω̂ = ε w0 with w0 ⊥ v and x ⊥ y in the standard parts (the
// existence test on M then reduces to further conditions met by most
// draws), or standard ω ⊥ v with w0 solved so ω̂^T v̂ = 0.  n = 1 forces
// both ω̂ and v̂ infinitesimal, where M is almost never in DC_z, so n >= 2.
DoubleStar gen_double_star(IntRng& rng, int d, bool violate, int scale) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        DoubleStar ds;
        ds.m = rng.uniform(1, d);
        ds.n = rng.uniform(2, d + 1);
        ds.x = nonzero_dual(rng, ds.m, 1, scale);
        ds.y = nonzero_dual(rng, ds.m, 1, scale);
        ds.a = gen_dual_scalar(rng, scale, true);
        ds.b = gen_dual_scalar(rng, scale, true);
        const bool infinitesimal_w = !violate && rng.coin(0.35);
        if (infinitesimal_w) {
            if (ds.m == 1) {
                ds.x.st.setZero();
                if (ds.x.norm() == 0.0) {
                    continue;
                }
            } else {
                ds.x = orthogonal_to(rng, ds.y, false, scale);
            }
        }
        const DualScalar theta = (ds.x.transpose() * ds.y)(0, 0) + ds.a * ds.b;
        if (theta.st == cplx(0.0)) {
            continue;
        }
        if (violate) {
            ds.w = nonzero_dual(rng, ds.n, 1, scale);
            ds.v = nonzero_dual(rng, ds.n, 1, scale);
            if ((ds.w.transpose() * ds.v).norm() == 0.0) {
                continue;
            }
        } else {
            ds.v = nonzero_dual(rng, ds.n, 1, scale);
            ds.w = orthogonal_to(rng, ds.v, infinitesimal_w, scale);
        }
        return ds;
    }
    throw GenerationFailed("double star: generation failed");
}

DLinkedStars gen_dlinked(IntRng& rng, int d, bool violate, int scale) {
    DLinkedStars dls;
    const int n = rng.uniform(1, d);
    dls.base = gen_dcz(rng, n, true, scale);
    for (int i = 0; i < n; ++i) {
        const int r = rng.uniform(1, 3);
        dls.r.push_back(r);
        auto [x, y] = orthogonal_pair(rng, r, scale);
        dls.x.push_back(x);
        dls.y.push_back(y);
    }
    if (violate) {
        for (;;) {
            dls.x[0] = DualMatrix(rng.matrix(dls.r[0], 1, scale));
            dls.y[0] = DualMatrix(rng.matrix(dls.r[0], 1, scale));
            if ((dls.x[0].transpose() * dls.y[0]).norm() != 0.0) {
                break;
            }
        }
    }
    return dls;
}

// Blades D̂_s = Ŝ_s (P̂_s ⊕ N̂_s) Ŝ_s⁻¹ with q_s >= 1.  Drazin stratum:
// ŷ_s = Ŝ_s [0; c e1], x̂_t^T = [h1, d e_q^T] Ŝ_t⁻¹.  Group stratum: N̂_s = 0
// and ŷ_s = Ŝ_s [0; u], x̂_t^T = [h1, h2] Ŝ_t⁻¹ with B̂Ĉ appreciable.
DutchWindmill gen_windmill(IntRng& rng, int d, bool group, bool violate, int scale) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        DutchWindmill dw;
        dw.m = rng.uniform(1, std::min(d, 3));
        dw.half = rng.uniform(1, 3);
        const int len = 2 * dw.half - 1;
        const bool zero_nil = group || rng.coin(0.25);
        DualScalar beta;  // B̂Ĉ = Σ x̂_t^T ŷ_t
        for (int s = 0; s < dw.m; ++s) {
            const int q = rng.uniform(1, len);
            const int p = len - q;
            SpectralModel m;
            if (zero_nil) {
                m.p = p;
                m.q = q;
                m.sim = gen_similarity(rng, len);
                m.core = gen_core(rng, p, scale);
                m.nil = DualMatrix::zero(q, q);
                m.a = conj(m.sim, block_diag({m.core, m.nil}));
            } else {
                m = gen_model(rng, p, q, true, scale);
            }
            DualMatrix yb = DualMatrix::zero(len, 1);
            DualMatrix xb = DualMatrix::zero(1, len);
            if (zero_nil) {
                yb.set_block(p, 0, nonzero_dual(rng, q, 1, scale));
                xb.set_block(0, 0, rng.dual(1, p, scale));
                xb.set_block(0, p, rng.dual(1, q, scale));
            } else {
                yb.set(p, 0, nonzero_dual_scalar(rng, scale));
                xb.set_block(0, 0, rng.dual(1, p, scale));
                xb.set(0, len - 1, gen_dual_scalar(rng, scale, false));
            }
            if (xb.norm() == 0.0) {
                xb.set(0, len - 1, DualScalar(rng.unit()));
            }
            beta = beta + (xb * yb)(0, 0);
            dw.blades.push_back(m.a);
            dw.y.push_back(m.sim.s * yb);
            dw.x.push_back((xb * m.sim.inv).transpose());
        }
        if (violate) {
            dw.y[0] = nonzero_dual(rng, len, 1, scale);
            if (check_windmill(dw).all_pass()) {
                continue;
            }
            return dw;
        }
        // φ̂ = ĈB̂ has φ̂² = β̂ φ̂: β̂ must be appreciable (index one) or zero
        if (beta.st == cplx(0.0) && (group || beta.inf != cplx(0.0))) {
            continue;
        }
        const WindmillBlocks wb = windmill_blocks(dw);
        const DualMatrix phi = wb.c * wb.b;
        if (phi.st.norm() == 0.0 && phi.inf.norm() != 0.0) {
            continue;
        }
        if (!check_windmill(dw).all_pass()) {
            continue;
        }
        return dw;
    }
    throw GenerationFailed("windmill: generation failed");
}

DutchWindmill gen_windmill_bc0(IntRng& rng, int d, bool violate, int scale) {
    DutchWindmill dw;
    dw.m = rng.uniform(1, std::min(d, 3));
    dw.half = rng.uniform(1, 3);
    const int len = 2 * dw.half - 1;
    for (int s = 0; s < dw.m; ++s) {
        dw.blades.push_back(gen_dcz(rng, len, true, scale));
        // ŷ_s x̂_t^T = 0 exactly: both pure infinitesimal
        dw.x.push_back(pure_inf(rng, len, 1, scale));
        dw.y.push_back(pure_inf(rng, len, 1, scale));
    }
    if (violate) {
        ComplexMatrix xs = rng.matrix(len, 1, scale);
        ComplexMatrix ys = rng.matrix(len, 1, scale);
        xs(0, 0) = 1.0;
        ys(0, 0) = 1.0;
        dw.x[0].st = xs;
        dw.y[0].st = ys;
    }
    return dw;
}

// E (p x q), F (q x p) with F̂Ê in DC_z
BlockInstance gen_bipartite_dual(IntRng& rng, int d, int scale) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const int stratum = rng.uniform(0, 2);
        DualMatrix e, f;
        if (stratum == 0) {
            const int q = rng.uniform(1, d);
            const int p = rng.uniform(q, d + 1);
            e = rng.dual(p, q, scale);
            f = rng.dual(q, p, scale);
        } else if (stratum == 1) {
            const DualMatrix x = gen_dcz(rng, d, true, scale);
            const Similarity u = gen_similarity(rng, d);
            e = x * u.inv;
            f = u.s;
        } else {
            // weighted cycle windmill in bipartite form
            DutchWindmill dw = unweighted_windmill(rng.uniform(1, std::min(d, 3)), rng.uniform(1, 3));
            for (int s = 0; s < dw.m; ++s) {
                DualMatrix& blade = dw.blades[s];
                for (Eigen::Index i = 0; i + 1 < blade.rows(); ++i) {
                    blade.set(i, i + 1, gen_dual_scalar(rng, scale, true));
                    blade.set(i + 1, i, gen_dual_scalar(rng, scale, true));
                }
                const auto last = blade.rows() - 1;
                dw.x[s].set(0, 0, gen_dual_scalar(rng, scale, true));
                dw.x[s].set(last, 0, gen_dual_scalar(rng, scale, true));
                dw.y[s].set(0, 0, gen_dual_scalar(rng, scale, true));
                dw.y[s].set(last, 0, gen_dual_scalar(rng, scale, true));
            }
            const BipartiteSplit split = bipartite_blocks(build_adjacency(dw));
            e = split.e;
            f = split.f;
        }
        if (member(f * e)) {
            return block(BlockTheorem::Bipartite, {{"B", e}, {"C", f}});
        }
    }
    throw GenerationFailed("bipartite dual: no admissible pair found");
}

}  // namespace

DualMatrix gen_dcz(IntRng& rng, Eigen::Index n, bool member_wanted, int scale) {
    if (n < 1) {
        throw std::invalid_argument("gen_dcz: order must be positive");
    }
    const int q = member_wanted ? rng.uniform(0, static_cast<int>(n))
                                : rng.uniform(1, static_cast<int>(n));
    const int p = static_cast<int>(n) - q;
    const std::vector<int> chains = gen_chains(rng, q, rng.coin());
    DualMatrix nil = gen_nilpotent(rng, chains, scale);
    if (!member_wanted) {
        // c E_{L,1} on a longest chain: Σ N^{k-i} E N^{i-1} has a nonzero diagonal
        const auto longest = std::max_element(chains.begin(), chains.end());
        int o = 0;
        for (auto it = chains.begin(); it != longest; ++it) {
            o += *it;
        }
        const cplx c = rng.unit() * cplx(rng.uniform(1, scale));
        nil.inf(o + *longest - 1, o) += c;
    }
    DualMatrix core = block_diag({gen_core(rng, p, scale), nil});
    // infinitesimal coupling between the two parts
    core.inf.topRightCorner(p, q) = rng.matrix(p, q, scale);
    core.inf.bottomLeftCorner(q, p) = rng.matrix(q, p, scale);
    return conj(gen_similarity(rng, n), core);
}

DualMatrix gen_rank_instance(IntRng& rng, Eigen::Index n, int scale) {
    if (rng.coin(0.2)) {
        return rng.dual(n, n, 1);
    }
    // Û diag(units, ε, 0) V̂ with random unimodular Û, V̂
    ComplexMatrix st = ComplexMatrix::Zero(n, n);
    ComplexMatrix inf = ComplexMatrix::Zero(n, n);
    const int r = rng.uniform(0, static_cast<int>(n));
    const int s = rng.uniform(0, static_cast<int>(n) - r);
    for (int i = 0; i < r; ++i) {
        st(i, i) = rng.unit();
        inf(i, i) = rng.gaussian(scale);
    }
    for (int i = r; i < r + s; ++i) {
        inf(i, i) = rng.unit() * cplx(rng.uniform(1, scale));
    }
    const Similarity u = gen_similarity(rng, n);
    const Similarity v = gen_similarity(rng, n);
    return u.s * DualMatrix(st, inf) * v.inv;
}

Case gen_instance(const GenConfig& cfg, int trial) {
    if (cfg.dim_min < 1 || cfg.dim_max < cfg.dim_min || cfg.trials < 1) {
        throw std::invalid_argument("gen_instance: invalid configuration");
    }
    if (cfg.violate && !supports_violation(cfg.theorem)) {
        throw std::invalid_argument("gen_instance: " + std::string(cli_name(cfg.theorem)) +
                                    " has no violation generator");
    }
    IntRng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const int d = draw_dim(cfg, rng, trial);
    const int sc = std::max(1, cfg.entry_scale);
    // the formulas presuppose the assembled matrix is in DC_z; draws that
    // meet the block conditions but not that premise are redrawn
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Case c;
        c.theorem = cfg.theorem;
        switch (cfg.theorem) {
            case Theorem::Cline:
                c.payload = gen_cline(rng, d, sc);
                break;
            case Theorem::TriUpper:
                c.payload = gen_tri(rng, BlockTheorem::TriUpper, d, sc);
                break;
            case Theorem::TriLower:
                c.payload = gen_tri(rng, BlockTheorem::TriLower, d, sc);
                break;
            case Theorem::SumPQ0:
                c.payload = gen_sum(rng, d, cfg.violate, sc);
                break;
            case Theorem::AbioRight:
                c.payload = gen_abio(rng, Side::Right, d, cfg.violate, sc);
                break;
            case Theorem::AbioLeft:
                c.payload = gen_abio(rng, Side::Left, d, cfg.violate, sc);
                break;
            case Theorem::AbcoRight:
                c.payload = gen_abco(rng, Side::Right, d, cfg.violate, sc);
                break;
            case Theorem::AbcoLeft:
                c.payload = gen_abco(rng, Side::Left, d, cfg.violate, sc);
                break;
            case Theorem::Bipartite:
                c.payload = gen_bipartite(rng, d, sc);
                break;
            case Theorem::DoubleStar:
                c.payload = GraphSpec(gen_double_star(rng, d, cfg.violate, sc));
                break;
            case Theorem::DLinkedStars:
                c.payload = GraphSpec(gen_dlinked(rng, d, cfg.violate, sc));
                break;
            case Theorem::Windmill:
                c.payload = GraphSpec(gen_windmill(rng, d, false, cfg.violate, sc));
                break;
            case Theorem::WindmillBC0:
                c.payload = GraphSpec(gen_windmill_bc0(rng, d, cfg.violate, sc));
                break;
            case Theorem::WindmillGroup:
                c.payload = GraphSpec(gen_windmill(rng, d, true, false, sc));
                break;
            case Theorem::BipartiteDual:
                c.payload = gen_bipartite_dual(rng, d, sc);
                break;
        }
        if (cfg.violate || admissible(assembled_matrix(c))) {
            return c;
        }
    }
    throw GenerationFailed(std::string(cli_name(cfg.theorem)) +
                           ": no draw with the assembled matrix in DC_z");
}

}  // namespace ddz
