#include "ddz/digraphs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddz/errors.hpp"

namespace ddz {

namespace {

std::string str(Eigen::Index i) { return std::to_string(i); }

void require_vector(const DualMatrix& v, Eigen::Index len, const std::string& what) {
    if (v.cols() != 1 || v.rows() != len) {
        throw SpecInvalid(what + ": expected a vector of length " + str(len) + ", got " +
                          str(v.rows()) + "x" + str(v.cols()));
    }
    if (v.norm() == 0.0) {
        throw SpecInvalid(what + ": zero vector");
    }
}

void validate_spec(const DoubleStar& s) {
    if (s.m < 1 || s.n < 1) {
        throw SpecInvalid("double_star: m and n must be positive");
    }
    require_vector(s.x, s.m, "double_star.x");
    require_vector(s.y, s.m, "double_star.y");
    require_vector(s.w, s.n, "double_star.w");
    require_vector(s.v, s.n, "double_star.v");
    if (!s.a.appreciable() || !s.b.appreciable()) {
        throw SpecInvalid("double_star: a and b must be appreciable");
    }
}

void validate_spec(const DLinkedStars& s) {
    const auto n = s.base.rows();
    if (n < 1 || !s.base.square()) {
        throw SpecInvalid("dlinked_stars: base must be square and nonempty");
    }
    if (static_cast<Eigen::Index>(s.r.size()) != n ||
        static_cast<Eigen::Index>(s.x.size()) != n || static_cast<Eigen::Index>(s.y.size()) != n) {
        throw SpecInvalid("dlinked_stars: need one (r_i, x_i, y_i) per base vertex");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (s.r[i] < 1) {
            throw SpecInvalid("dlinked_stars: r_" + str(i + 1) + " must be positive");
        }
        require_vector(s.x[i], s.r[i], "dlinked_stars.x_" + str(i + 1));
        require_vector(s.y[i], s.r[i], "dlinked_stars.y_" + str(i + 1));
    }
}

void validate_spec(const DutchWindmill& s) {
    if (s.m < 1 || s.half < 1) {
        throw SpecInvalid("windmill: m and n must be positive");
    }
    const Eigen::Index len = 2 * s.half - 1;
    if (static_cast<int>(s.blades.size()) != s.m || static_cast<int>(s.x.size()) != s.m ||
        static_cast<int>(s.y.size()) != s.m) {
        throw SpecInvalid("windmill: need one (blade, x_i, y_i) per blade");
    }
    for (int i = 0; i < s.m; ++i) {
        if (s.blades[i].rows() != len || s.blades[i].cols() != len) {
            throw SpecInvalid("windmill: blade " + str(i + 1) + " must be " + str(len) + "x" +
                              str(len));
        }
        require_vector(s.x[i], len, "windmill.x_" + str(i + 1));
        require_vector(s.y[i], len, "windmill.y_" + str(i + 1));
    }
}


DualMatrix dual_dot(const DualMatrix& x, const DualMatrix& y) { return x.transpose() * y; }

// st/inf parts of the dual Drazin inverse, or NotDualDrazinInvertible
DualDrazinData drazin_parts(const DualMatrix& x, const Tolerances& tol) {
    return dual_drazin(x, tol);
}

// Hub-and-blade formula, evaluated with explicit ε-parts of each factor:
//   (D̂^D)^s = D^{sD} + ε Σ_{j<s} D^{jD} D_R D^{(s-1-j)D}
//   φ̂^π     = φ^π   - ε (φ φ_R + φ0 φ^D)
//   φ̂^i     = φ^i   + ε Σ_{j=1}^{i} φ^{i-j} φ0 φ^{j-1}
//   D̂^π     = D^π   - ε (D D_R + D0 D^D)
// and multiplied out with the product rule.
DualMatrix windmill_formula(const WindmillBlocks& wb, const ComplexMatrix& dd,
                            const ComplexMatrix& dr, const ComplexMatrix& pd,
                            const ComplexMatrix& pr, int i_phi) {
    const DualMatrix& b = wb.b;
    const DualMatrix& c = wb.c;
    const DualMatrix& d = wb.d;
    const DualMatrix phi = c * b;
    const auto nn = d.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(nn, nn);

    std::vector<ComplexMatrix> dd_pow{id};
    auto dd_power = [&](int s) -> const ComplexMatrix& {
        while (static_cast<int>(dd_pow.size()) <= s) {
            dd_pow.push_back(dd_pow.back() * dd);
        }
        return dd_pow[s];
    };
    auto drazin_power = [&](int s) {
        ComplexMatrix inf = ComplexMatrix::Zero(nn, nn);
        for (int j = 0; j < s; ++j) {
            inf += dd_power(j) * dr * dd_power(s - 1 - j);
        }
        return DualMatrix(dd_power(s), inf);
    };
    auto phi_power = [&](int i) {
        ComplexMatrix st = id;
        for (int j = 0; j < i; ++j) {
            st = st * phi.st;
        }
        return DualMatrix(st, power_inf_sum(phi, i));
    };

    const DualMatrix phi_pi(id - phi.st * pd, -(phi.st * pr + phi.inf * pd));
    const DualMatrix phi_d(pd, pr);
    const DualMatrix phi_2d(pd * pd, pd * pr + pr * pd);
    const DualMatrix d_pi(id - d.st * dd, -(d.st * dr + d.inf * dd));

    DualMatrix x11 = DualMatrix::zero(1, 1);
    DualMatrix x12 = DualMatrix::zero(1, nn);
    DualMatrix x21 = DualMatrix::zero(nn, 1);
    DualMatrix x22 = DualMatrix::zero(nn, nn);
    for (int i = 0; i < i_phi; ++i) {
        const DualMatrix lead = phi_pi * phi_power(i);
        x22 += lead * drazin_power(2 * i + 1);
        x21 += lead * drazin_power(2 * i + 2) * c;
        x12 += b * lead * drazin_power(2 * i + 2);
        x11 += b * lead * drazin_power(2 * i + 3) * c;
    }
    x21 += phi_d * d_pi * c;
    x12 += b * phi_d * d_pi;
    x11 -= b * phi_2d * d * d_pi * c;
    x11 -= b * phi_d * drazin_power(1) * c;
    return assemble(x11, x12, x21, x22);
}

}  // namespace

std::string_view family_name(const GraphSpec& spec) {
    switch (spec.index()) {
        case 0:
            return "double_star";
        case 1:
            return "dlinked_stars";
        default:
            return "windmill";
    }
}

Eigen::Index graph_order(const GraphSpec& spec) {
    if (const auto* ds = std::get_if<DoubleStar>(&spec)) {
        return ds->m + ds->n + 2;
    }
    if (const auto* dls = std::get_if<DLinkedStars>(&spec)) {
        Eigen::Index total = dls->base.rows();
        for (int r : dls->r) {
            total += r;
        }
        return total;
    }
    const auto& dw = std::get<DutchWindmill>(spec);
    return 1 + static_cast<Eigen::Index>(dw.m) * (2 * dw.half - 1);
}

void validate(const GraphSpec& spec) {
    std::visit([](const auto& s) { validate_spec(s); }, spec);
}

Pattern support(const DualMatrix& x) {
    return (x.st.array() != cplx(0.0)) || (x.inf.array() != cplx(0.0));
}

Pattern arc_pattern(const GraphSpec& spec) {
    const auto order = graph_order(spec);
    Pattern p = Pattern::Constant(order, order, false);
    if (const auto* ds = std::get_if<DoubleStar>(&spec)) {
        const int c2 = ds->m + 1;
        for (int i = 1; i <= ds->m; ++i) {
            p(0, i) = p(i, 0) = true;
        }
        p(0, c2) = p(c2, 0) = true;
        for (int i = c2 + 1; i < order; ++i) {
            p(c2, i) = p(i, c2) = true;
        }
    } else if (const auto* dls = std::get_if<DLinkedStars>(&spec)) {
        const auto n = dls->base.rows();
        p.topLeftCorner(n, n) = support(dls->base);
        Eigen::Index offset = n;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (int j = 0; j < dls->r[i]; ++j) {
                p(i, offset + j) = p(offset + j, i) = true;
            }
            offset += dls->r[i];
        }
    } else {
        const auto& dw = std::get<DutchWindmill>(spec);
        const Eigen::Index len = 2 * dw.half - 1;
        for (int s = 0; s < dw.m; ++s) {
            const Eigen::Index off = 1 + s * len;
            p.block(0, off, 1, len).setConstant(true);
            p.block(off, 0, len, 1).setConstant(true);
            p.block(off, off, len, len).setConstant(true);
        }
    }
    return p;
}

AdjacencyBuild build_adjacency(const GraphSpec& spec) {
    validate(spec);
    AdjacencyBuild out;
    const auto order = graph_order(spec);
    DualMatrix m = DualMatrix::zero(order, order);
    auto& labels = out.vertex_order;

    if (const auto* ds = std::get_if<DoubleStar>(&spec)) {
        const int c2 = ds->m + 1;
        m.set_block(0, 1, ds->x.transpose());
        m.set_block(1, 0, ds->y);
        m.set(0, c2, ds->a);
        m.set(c2, 0, ds->b);
        m.set_block(c2, c2 + 1, ds->w.transpose());
        m.set_block(c2 + 1, c2, ds->v);
        labels.push_back("c1");
        for (int i = 1; i <= ds->m; ++i) {
            labels.push_back("c1.leaf" + str(i));
        }
        labels.push_back("c2");
        for (int i = 1; i <= ds->n; ++i) {
            labels.push_back("c2.leaf" + str(i));
        }
    } else if (const auto* dls = std::get_if<DLinkedStars>(&spec)) {
        const auto n = dls->base.rows();
        m.set_block(0, 0, dls->base);
        for (Eigen::Index i = 0; i < n; ++i) {
            labels.push_back("c" + str(i + 1));
        }
        Eigen::Index offset = n;
        for (Eigen::Index i = 0; i < n; ++i) {
            m.set_block(i, offset, dls->x[i].transpose());
            m.set_block(offset, i, dls->y[i]);
            for (int j = 1; j <= dls->r[i]; ++j) {
                labels.push_back("c" + str(i + 1) + ".leaf" + str(j));
            }
            offset += dls->r[i];
        }
    } else {
        const auto& dw = std::get<DutchWindmill>(spec);
        const Eigen::Index len = 2 * dw.half - 1;
        labels.push_back("hub");
        std::vector<int> part1{0};
        std::vector<int> part2;
        for (int s = 0; s < dw.m; ++s) {
            const Eigen::Index off = 1 + s * len;
            m.set_block(0, off, dw.x[s].transpose());
            m.set_block(off, 0, dw.y[s]);
            m.set_block(off, off, dw.blades[s]);
            for (Eigen::Index j = 1; j <= len; ++j) {
                labels.push_back("blade" + str(s + 1) + "." + str(j));
                (j % 2 == 0 ? part1 : part2).push_back(static_cast<int>(off + j - 1));
            }
        }
        part1.insert(part1.end(), part2.begin(), part2.end());
        out.permutation_to_bipartite = std::move(part1);
        out.kappa = 2 * dw.m * dw.half - dw.m + 1;
    }

    const Pattern allowed = arc_pattern(spec);
    if (((support(m) && !allowed)).any()) {
        throw SpecInvalid(std::string(family_name(spec)) + ": entries outside the arc set");
    }
    out.matrix = std::move(m);
    return out;
}

DualMatrix cycle_blade(int half) {
    if (half < 1) {
        throw SpecInvalid("cycle_blade: n must be positive");
    }
    const Eigen::Index len = 2 * half - 1;
    ComplexMatrix d = ComplexMatrix::Zero(len, len);
    for (Eigen::Index i = 0; i + 1 < len; ++i) {
        d(i, i + 1) = 1.0;
        d(i + 1, i) = 1.0;
    }
    return DualMatrix(d);
}

DualMatrix cycle_ends(int half) {
    const Eigen::Index len = 2 * half - 1;
    ComplexMatrix v = ComplexMatrix::Zero(len, 1);
    v(0, 0) = 1.0;
    v(len - 1, 0) = 1.0;
    return DualMatrix(v);
}

DutchWindmill unweighted_windmill(int m, int half) {
    DutchWindmill dw;
    dw.m = m;
    dw.half = half;
    for (int s = 0; s < m; ++s) {
        dw.blades.push_back(cycle_blade(half));
        dw.x.push_back(cycle_ends(half));
        dw.y.push_back(cycle_ends(half));
    }
    return dw;
}

DualMatrix permute(const DualMatrix& x, const std::vector<int>& perm) {
    const auto n = static_cast<Eigen::Index>(perm.size());
    if (!x.square() || x.rows() != n) {
        throw ShapeMismatch("permute: permutation length does not match the matrix");
    }
    DualMatrix out = DualMatrix::zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.set(i, j, x(perm[i], perm[j]));
        }
    }
    return out;
}

BipartiteSplit bipartite_blocks(const AdjacencyBuild& build) {
    if (!build.permutation_to_bipartite) {
        throw SpecInvalid("bipartite_blocks: no bipartition for this family");
    }
    const auto& perm = *build.permutation_to_bipartite;
    const DualMatrix mp = permute(build.matrix, perm);
    // part 1 = hub + even blade positions
    Eigen::Index p = 1;
    const auto n = mp.rows();
    for (Eigen::Index i = 1; i < n; ++i) {
        const std::string& label = build.vertex_order[perm[i]];
        const int pos = std::stoi(label.substr(label.find('.') + 1));
        if (pos % 2 == 0) {
            ++p;
        }
    }
    const Eigen::Index q = n - p;
    if (support(mp.block(0, 0, p, p)).any() || support(mp.block(p, p, q, q)).any()) {
        throw SpecInvalid("bipartite_blocks: arcs inside a part; blades are not cycle patterns");
    }
    return {mp.block(0, p, p, q), mp.block(p, 0, q, p)};
}

WindmillBlocks windmill_blocks(const DutchWindmill& spec) {
    validate_spec(spec);
    WindmillBlocks wb;
    const Eigen::Index len = 2 * spec.half - 1;
    const Eigen::Index total = spec.m * len;
    wb.b = DualMatrix::zero(1, total);
    wb.c = DualMatrix::zero(total, 1);
    for (int s = 0; s < spec.m; ++s) {
        wb.b.set_block(0, s * len, spec.x[s].transpose());
        wb.c.set_block(s * len, 0, spec.y[s]);
    }
    wb.d = block_diag(spec.blades);
    return wb;
}

// ---- hypotheses ------------------------------------------------------------

HypothesisReport check_double_star(const DoubleStar& spec, const Tolerances& tol) {
    validate_spec(spec);
    HypothesisReport report;
    const DualMatrix wv = dual_dot(spec.w, spec.v);
    add_check(report, "w^T v = 0", wv.norm(), 1.0 + spec.w.norm() * spec.v.norm(),
              tol.hypothesis);
    return report;
}

HypothesisReport check_dlinked_stars(const DLinkedStars& spec, const Tolerances& tol) {
    validate_spec(spec);
    HypothesisReport report;
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
        add_check(report, "x_" + str(i + 1) + "^T y_" + str(i + 1) + " = 0",
                  dual_dot(spec.x[i], spec.y[i]).norm(),
                  1.0 + spec.x[i].norm() * spec.y[i].norm(), tol.hypothesis);
    }
    add_membership_check(report, "base", spec.base, tol);
    return report;
}

HypothesisReport check_windmill(const DutchWindmill& spec, const Tolerances& tol) {
    const WindmillBlocks wb = windmill_blocks(spec);
    HypothesisReport report;
    const DualMatrix phi = wb.c * wb.b;
    add_membership_check(report, "D", wb.d, tol);
    add_membership_check(report, "CB", phi, tol);
    if (!report.all_pass()) {
        return report;
    }
    const DualSpectral sd(wb.d, tol);
    const DualMatrix d_de = wb.d * sd.e();
    const DualMatrix d_dpi = wb.d * sd.pi();
    add_check(report, "D D^e y_s x_t^T = 0", (d_de * phi).norm(),
              1.0 + d_de.norm() * phi.norm(), tol.hypothesis);
    add_check(report, "D y_s x_t^T = y_s x_t^T D D^pi", (wb.d * phi - phi * d_dpi).norm(),
              1.0 + (wb.d.norm() + d_dpi.norm()) * phi.norm(), tol.hypothesis);
    return report;
}

HypothesisReport check_windmill_bc_zero(const DutchWindmill& spec, const Tolerances& tol) {
    const WindmillBlocks wb = windmill_blocks(spec);
    HypothesisReport report;
    add_check(report, "y_s x_t^T = 0", (wb.c * wb.b).norm(), 1.0 + wb.c.norm() * wb.b.norm(),
              tol.hypothesis);
    add_membership_check(report, "D", wb.d, tol);
    return report;
}

namespace {

void enforce(const HypothesisReport& report, std::string_view what) {
    if (!report.all_pass()) {
        throw HypothesisViolated(std::string(what) + ": " + report.failures());
    }
}

}  // namespace

// ---- closed forms ------------------------------------------------------------

DualMatrix ds_dual_drazin(const DoubleStar& spec, const Tolerances& tol) {
    enforce(check_double_star(spec, tol), "double_star");
    const DualScalar theta = dual_dot(spec.x, spec.y)(0, 0) + spec.a * spec.b;
    const double scale =
        std::max(1.0, spec.x.norm() * spec.y.norm() + std::abs(spec.a.st) * std::abs(spec.b.st));
    const DualScalar theta_d = scalar_dual_drazin(theta, scale, tol);
    if (theta_d.st == cplx(0.0)) {
        // θ = 0: the star block is nilpotent and the closed form is zero,
        // which is only right when the whole matrix has a dual Drazin inverse
        const AdjacencyBuild build = build_adjacency(spec);
        if (!dual_exists(build.matrix, tol).exists) {
            throw NotDualDrazinInvertible("double_star: theta = 0 and M is outside DC_z");
        }
    }

    const int m = spec.m;
    const int n = spec.n;
    const int c2 = m + 1;
    const int l2 = m + 2;
    const auto order = m + n + 2;

    const cplx td = theta_d.st;
    const cplx tr = theta_d.inf;  // θ_R
    const cplx td2 = td * td;
    const cplx td_tr2 = 2.0 * td * tr;  // θ^D θ_R + θ_R θ^D
    const cplx a = spec.a.st, a0 = spec.a.inf;
    const cplx b = spec.b.st, b0 = spec.b.inf;
    const ComplexMatrix x = spec.x.st, x0 = spec.x.inf;
    const ComplexMatrix y = spec.y.st, y0 = spec.y.inf;
    const ComplexMatrix w = spec.w.st, w0 = spec.w.inf;
    const ComplexMatrix v = spec.v.st, v0 = spec.v.inf;

    ComplexMatrix s = ComplexMatrix::Zero(order, order);
    ComplexMatrix e = ComplexMatrix::Zero(order, order);

    s.block(0, 1, 1, m) = td * x.transpose();
    s(0, c2) = td * a;
    s.block(1, 0, m, 1) = y * td;
    s.block(1, l2, m, n) = y * td2 * a * w.transpose();
    s(c2, 0) = b * td;
    s.block(c2, l2, 1, n) = b * td2 * a * w.transpose();
    s.block(l2, 1, n, m) = v * b * td2 * x.transpose();
    s.block(l2, c2, n, 1) = v * b * td2 * a;

    e.block(0, 1, 1, m) = td * x0.transpose() + tr * x.transpose();
    e(0, c2) = td * a0 + tr * a;
    e.block(1, 0, m, 1) = y * tr + y0 * td;
    e(c2, 0) = b * tr + b0 * td;
    e.block(1, l2, m, n) = y * td2 * a * w0.transpose() + y * td2 * a0 * w.transpose() +
                           y * td_tr2 * a * w.transpose() + y0 * td2 * a * w.transpose();
    e.block(c2, l2, 1, n) = b * td2 * a * w0.transpose() + b * td2 * a0 * w.transpose() +
                            b * td_tr2 * a * w.transpose() + b0 * td2 * a * w.transpose();
    e.block(l2, 1, n, m) = v * b * td2 * x0.transpose() + v * b * td_tr2 * x.transpose() +
                           v * b0 * td2 * x.transpose() + v0 * b * td2 * x.transpose();
    e.block(l2, c2, n, 1) =
        v * b * td2 * a0 + v * b * td_tr2 * a + v * b0 * td2 * a + v0 * b * td2 * a;
    return {s, e};
}

DualMatrix dls_dual_drazin(const DLinkedStars& spec, const Tolerances& tol) {
    enforce(check_dlinked_stars(spec, tol), "dlinked_stars");
    std::vector<DualMatrix> xt;
    for (const auto& x : spec.x) {
        xt.push_back(x.transpose());
    }
    const DualMatrix bh = block_diag(xt);
    const DualMatrix ch = block_diag(spec.y);

    const DualDrazinData dd = drazin_parts(spec.base, tol);
    const ComplexMatrix& ad = dd.inverse.st;
    const ComplexMatrix& ar = dd.inverse.inf;
    const ComplexMatrix ad2 = ad * ad;
    const ComplexMatrix ad3 = ad2 * ad;
    const ComplexMatrix& b = bh.st;
    const ComplexMatrix& b0 = bh.inf;
    const ComplexMatrix& c = ch.st;
    const ComplexMatrix& c0 = ch.inf;

    const ComplexMatrix st = assemble(ad, ad2 * b, c * ad2, c * ad3 * b);
    const ComplexMatrix inf =
        assemble(ar, ad2 * b0 + ad * ar * b + ar * ad * b, c * ad * ar + c * ar * ad + c0 * ad2,
                 c * ad3 * b0 + c * ad2 * ar * b + c0 * ad3 * b + c * ad * ar * ad * b +
                     c * ar * ad2 * b);
    return {st, inf};
}

DualMatrix dw_dual_drazin(const DutchWindmill& spec, const Tolerances& tol) {
    enforce(check_windmill(spec, tol), "windmill");
    const WindmillBlocks wb = windmill_blocks(spec);
    const DualDrazinData d = drazin_parts(wb.d, tol);
    const DualDrazinData phi = drazin_parts(wb.c * wb.b, tol);
    return windmill_formula(wb, d.inverse.st, d.inverse.inf, phi.inverse.st, phi.inverse.inf,
                            phi.index);
}

DualMatrix dw_bc_zero(const DutchWindmill& spec, const Tolerances& tol) {
    enforce(check_windmill_bc_zero(spec, tol), "windmill (CB = 0)");
    const WindmillBlocks wb = windmill_blocks(spec);
    const DualDrazinData dd = drazin_parts(wb.d, tol);
    const ComplexMatrix& d1 = dd.inverse.st;
    const ComplexMatrix& dr = dd.inverse.inf;
    const ComplexMatrix d2 = d1 * d1;
    const ComplexMatrix d3 = d2 * d1;
    const ComplexMatrix& b = wb.b.st;
    const ComplexMatrix& b0 = wb.b.inf;
    const ComplexMatrix& c = wb.c.st;
    const ComplexMatrix& c0 = wb.c.inf;

    const ComplexMatrix st = assemble(b * d3 * c, b * d2, d2 * c, d1);
    const ComplexMatrix inf = assemble(
        b * d3 * c0 + b * d2 * dr * c + b0 * d3 * c + b * dr * d2 * c + b * d1 * dr * d1 * c,
        b * d1 * dr + b * dr * d1 + b0 * d2, d2 * c0 + d1 * dr * c + dr * d1 * c, dr);
    return {st, inf};
}

DualMatrix dw_group(const DutchWindmill& spec, const Tolerances& tol) {
    const WindmillBlocks wb = windmill_blocks(spec);
    const DualMatrix phi = wb.c * wb.b;
    const int ind_phi = index_of(phi.st, tol);
    const int ind_d = index_of(wb.d.st, tol);
    if (ind_phi > 1 || ind_d > 1) {
        throw IndexTooLarge("windmill group inverse: Ind(CB) = " + str(ind_phi) +
                            ", Ind(D) = " + str(ind_d));
    }
    enforce(check_windmill(spec, tol), "windmill");
    const ComplexMatrix dg = group_inverse(wb.d.st, tol);
    const ComplexMatrix pg = group_inverse(phi.st, tol);
    // ε-parts of the dual group inverses
    const ComplexMatrix dr = drazin_parts(wb.d, tol).inverse.inf;
    const ComplexMatrix pr = drazin_parts(phi, tol).inverse.inf;
    return windmill_formula(wb, dg, dr, pg, pr, 1);
}

DualMatrix bipartite_dual(const DualMatrix& e, const DualMatrix& f, const Tolerances& tol) {
    if (e.rows() != f.cols() || e.cols() != f.rows()) {
        throw ShapeMismatch("bipartite_dual: E must be p x q and F q x p");
    }
    const DualDrazinData fe = dual_drazin(f * e, tol);
    const ComplexMatrix& fd = fe.inverse.st;
    const ComplexMatrix& fr = fe.inverse.inf;
    const auto p = e.rows();
    const auto q = e.cols();
    const ComplexMatrix zp = ComplexMatrix::Zero(p, p);
    const ComplexMatrix zq = ComplexMatrix::Zero(q, q);
    return {assemble(zp, e.st * fd, fd * f.st, zq),
            assemble(zp, e.st * fr + e.inf * fd, fd * f.inf + fr * f.st, zq)};
}

ComplexMatrix bipartite_group_real(const ComplexMatrix& e, const ComplexMatrix& f,
                                   const Tolerances& tol) {
    if (e.rows() != f.cols() || e.cols() != f.rows()) {
        throw ShapeMismatch("bipartite_group_real: E must be p x q and F q x p");
    }
    if (e.imag().norm() != 0.0 || f.imag().norm() != 0.0) {
        throw std::invalid_argument("bipartite_group_real: E and F must be real");
    }
    const ComplexMatrix g = group_inverse(e * f, tol);
    const auto p = e.rows();
    const auto q = e.cols();
    return assemble(ComplexMatrix::Zero(p, p), g * e, f * g, ComplexMatrix::Zero(q, q));
}

}  // namespace ddz
