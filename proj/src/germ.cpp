#include "k3/germ.hpp"

#include <algorithm>
#include <limits>

#include "k3/linalg.hpp"
#include "k3/surface.hpp"
#include "k3/univar.hpp"

namespace k3 {

std::string LocalType::str() const {
    switch (kind) {
        case kOff: return "off";
        case kSmooth: return "smooth";
        case kA: return "A" + std::to_string(index);
        case kD: return "D" + std::to_string(index);
        case kE: return "E" + std::to_string(index);
    }
    return "?";
}

LocalType parse_local_type(const std::string& s) {
    if (s == "off") return {LocalType::kOff, 0};
    if (s == "smooth") return {LocalType::kSmooth, 0};
    if (s.size() >= 2) {
        int idx = 0;
        try {
            idx = std::stoi(s.substr(1));
        } catch (const std::exception&) {
            throw ToolError("parse", "bad local type '" + s + "'");
        }
        if (s[0] == 'A') return {LocalType::kA, idx};
        if (s[0] == 'D') return {LocalType::kD, idx};
        if (s[0] == 'E') return {LocalType::kE, idx};
    }
    throw ToolError("parse", "bad local type '" + s + "'");
}

namespace {

constexpr int kOrdInf = std::numeric_limits<int>::max() / 4;

int ord_total(const Poly& p) {
    int o = kOrdInf;
    for (const auto& [m, c] : p.terms()) o = std::min(o, m.total());
    return o;
}

Poly truncate_deg(const Poly& p, int cap) {
    Poly r;
    for (const auto& [m, c] : p.terms())
        if (m.total() <= cap) r.add_term(c, m);
    return r;
}

// Product truncated to total degree <= cap. Pairs past the cap are skipped
// before their monomials multiply: the untruncated product of two capped
// factors can overflow the per-variable exponent limit even though all of
// it past the cap is about to be dropped.
Poly mul_trunc(const Poly& a, const Poly& b, int cap) {
    Poly r;
    for (const auto& [ma, ca] : a.terms()) {
        if (ma.total() > cap) continue;
        for (const auto& [mb, cb] : b.terms())
            if (ma.total() + mb.total() <= cap)
                r.add_term(ca * cb, ma.times(mb));
    }
    return r;
}

// Composition mod total degree > cap, Horner per substituted variable with
// truncation after every product. A dropped term never re-enters below the
// cap (multiplying a monomial cannot lower its total degree), so this agrees
// with subst + truncate_deg while keeping every intermediate power of the
// replacements inside the exponent limit.
Poly subst_trunc(const Poly& p, const std::map<VarId, Poly>& m, int cap) {
    VarId v = -1;
    for (VarId u : p.vars())
        if (m.count(u)) {
            v = u;
            break;
        }
    if (v < 0) return truncate_deg(p, cap);
    const Poly& rep = m.at(v);
    std::vector<Poly> cs = coeffs_in(p, v);
    Poly r;
    for (std::size_t k = cs.size(); k-- > 0;)
        r = mul_trunc(r, rep, cap) + subst_trunc(cs[k], m, cap);
    return r;
}

Poly homogeneous_part(const Poly& p, int d) {
    Poly r;
    for (const auto& [m, c] : p.terms())
        if (m.total() == d) r.add_term(c, m);
    return r;
}

Q second_partial_at_zero(const Poly& g, VarId a, VarId b) {
    Poly d = derivative(derivative(g, a), b);
    Q out = 0;
    for (const auto& [m, c] : d.terms())
        if (m.total() == 0) out = c;
    return out;
}

// Substitutes the linear change sending each old variable to the combination
// of the same three variables given by the columns of B.
Poly linear_change(const Poly& g, const std::array<VarId, 3>& v,
                   const QMat& B) {
    std::map<VarId, Poly> m;
    for (int i = 0; i < 3; ++i) {
        Poly e;
        for (int j = 0; j < 3; ++j)
            e += Poly::variable(v[j]) * B[i][j];
        m[v[i]] = e;
    }
    return subst(g, m);
}

// Series inverse of a unit power series in one variable, truncated.
Poly series_inverse(const Poly& f, VarId v, int cap) {
    Q f0;
    bool has0 = false;
    for (const auto& [m, c] : f.terms())
        if (m.total() == 0) {
            f0 = c;
            has0 = true;
        }
    if (!has0 || f0 == 0)
        throw ToolError("internal", "series inversion of a non-unit");
    Poly inv(Q(1) / f0);
    for (int steps = 1; steps < cap + 1; steps *= 2)
        inv = mul_trunc(inv, Poly(2) - mul_trunc(f, inv, cap), cap);
    (void)v;
    return inv;
}

struct GermWork {
    std::array<VarId, 3> v;
    int cap;
};

// Corank-1 branch: quadratic part nondegenerate on (v0, v1), kernel on v2.
// Eliminates (v0, v1) by Newton and reads the order in v2.
LocalType classify_corank1(const Poly& g, const GermWork& w) {
    VarId x = w.v[0], y = w.v[1];
    Poly gx = derivative(g, x), gy = derivative(g, y);
    QMat J{{second_partial_at_zero(g, x, x), second_partial_at_zero(g, x, y)},
           {second_partial_at_zero(g, x, y), second_partial_at_zero(g, y, y)}};
    QMat Ji = inverse(J);
    Poly X(0), Y(0);
    for (int it = 0; it <= w.cap + 1; ++it) {
        std::map<VarId, Poly> m{{x, X}, {y, Y}};
        Poly fx = subst_trunc(gx, m, w.cap);
        Poly fy = subst_trunc(gy, m, w.cap);
        if (fx.is_zero() && fy.is_zero()) break;
        X = truncate_deg(X - (fx * Ji[0][0] + fy * Ji[0][1]), w.cap);
        Y = truncate_deg(Y - (fx * Ji[1][0] + fy * Ji[1][1]), w.cap);
    }
    Poly h = subst_trunc(g, {{x, X}, {y, Y}}, w.cap);
    int o = ord_total(h);
    if (o > w.cap)
        throw ToolError("inconclusive",
                        "branch order exceeds the truncation cap");
    return {LocalType::kA, o - 1};
}

// Linear factor of a binary cubic in (a, b) with the given multiplicity,
// or zero poly when absent.
Poly repeated_factor(const Poly& cubic, VarId a, VarId b, int mult) {
    BForm bf = to_bform(cubic, a, b);
    if (bf.deg - bf.phi.deg() == mult) return Poly::variable(a);
    if (bf.phi.deg() >= 1) {
        std::vector<UPoly> parts = yun(bf.phi);
        if (static_cast<int>(parts.size()) >= mult &&
            parts[mult - 1].deg() == 1) {
            Q t0 = -parts[mult - 1].coeff(0);
            return Poly::variable(b) - Poly::variable(a) * t0;
        }
    }
    return Poly(0);
}

// Change of coordinates in the (a, b)-plane with the rows of L mapping to
// the coordinate functions: returns h in new coordinates (same ids).
Poly plane_change(const Poly& h, VarId a, VarId b, const QMat& L) {
    QMat A = inverse(L);
    std::map<VarId, Poly> m{
        {a, Poly::variable(a) * A[0][0] + Poly::variable(b) * A[0][1]},
        {b, Poly::variable(a) * A[1][0] + Poly::variable(b) * A[1][1]}};
    return subst(h, m);
}

std::array<Q, 2> linear_coeffs(const Poly& l, VarId a, VarId b) {
    std::array<Q, 2> out{};
    Poly ca = coeff_in(l, a, 1), cb = coeff_in(l, b, 1);
    if (!ca.is_zero()) out[0] = ca.constant_value();
    if (!cb.is_zero()) out[1] = cb.constant_value();
    return out;
}

// D-series index from the corank-2 residual with cubic part const * a^2 b.
LocalType classify_d_series(const Poly& h, VarId a, VarId b, int cap) {
    Poly F = derivative(h, a);   // 2c a b + higher
    Poly G = derivative(F, a);   // 2c b * unit
    Poly A(0);
    for (int it = 0; it <= cap + 1; ++it) {
        Poly Fa = subst_trunc(F, {{a, A}}, cap);
        if (Fa.is_zero()) break;
        Poly Ga = subst_trunc(G, {{a, A}}, cap);
        auto Fb = divide_exact(Fa, Poly::variable(b));
        auto Gb = divide_exact(Ga, Poly::variable(b));
        if (!Fb || !Gb)
            throw ToolError("inconclusive", "division fails in branch solve");
        Poly inv = series_inverse(*Gb, b, cap);
        A -= mul_trunc(*Fb, inv, cap);
    }
    Poly r = subst_trunc(h, {{a, A}}, cap);
    int o = ord_total(r);
    if (o > cap)
        throw ToolError("inconclusive", "branch order exceeds the truncation cap");
    return {LocalType::kD, o + 1};
}

// E-series via Weierstrass preparation of a residual with cubic part
// const * a^3: h = unit * (a^3 + s2(b) a^2 + s1(b) a + s0(b)).
LocalType classify_e_series(const Poly& h, VarId a, VarId b, int cap) {
    std::vector<Poly> hj(cap + 1, Poly(0));  // coefficients of b^j
    for (int j = 0; j <= cap; ++j) hj[j] = coeff_in(h, b, j);
    auto a3 = Poly::variable(a, 3);
    auto div_a3 = divide_exact(hj[0], a3);
    if (!div_a3)
        throw ToolError("internal", "cubic direction not normalized");
    std::vector<Poly> U{*div_a3};  // unit expansion in b
    Q u0 = U[0].coeff(Mono{});
    if (u0 == 0) throw ToolError("internal", "unit has no constant term");
    std::vector<Q> s2(cap + 1, Q(0)), s1(cap + 1, Q(0)), s0(cap + 1, Q(0));
    auto coeff_a = [&](const Poly& p, int k) {
        Poly c = coeff_in(p, a, k);
        if (c.is_zero()) return Q(0);
        if (!c.is_constant())
            throw ToolError("internal", "stray variable in preparation");
        return c.constant_value();
    };
    for (int j = 1; j <= cap; ++j) {
        Poly R = hj[j];
        for (int i = 1; i < j; ++i) {
            Poly Pi = Poly::variable(a, 2) * s2[i] + Poly::variable(a) * s1[i] +
                      Poly(s0[i]);
            R -= U[j - i] * Pi;
        }
        s0[j] = coeff_a(R, 0) / u0;
        R -= U[0] * s0[j];
        s1[j] = coeff_a(R, 1) / u0;
        R -= U[0] * (Poly::variable(a) * s1[j]);
        s2[j] = coeff_a(R, 2) / u0;
        R -= U[0] * (Poly::variable(a, 2) * s2[j]);
        auto Uj = divide_exact(R, a3);
        if (!Uj) throw ToolError("internal", "preparation remainder");
        U.push_back(*Uj);
    }
    // Depress: p = s1 - s2^2/3, q = s0 - s1 s2 / 3 + 2 s2^3 / 27 as series.
    Poly S2(0), S1(0), S0(0);
    for (int j = 1; j <= cap; ++j) {
        S2 += Poly::variable(b, j) * s2[j];
        S1 += Poly::variable(b, j) * s1[j];
        S0 += Poly::variable(b, j) * s0[j];
    }
    Poly p = S1 - Q(1, 3) * mul_trunc(S2, S2, cap);
    Poly q = S0 - Q(1, 3) * mul_trunc(S1, S2, cap) +
             Q(2, 27) * mul_trunc(mul_trunc(S2, S2, cap), S2, cap);
    int alpha = ord_total(p), beta = ord_total(q);
    if (beta == 4) return {LocalType::kE, 6};
    if (alpha == 3 && beta >= 5) return {LocalType::kE, 7};
    if (beta == 5 && alpha >= 4) return {LocalType::kE, 8};
    if (alpha >= 4 && beta >= 6 && (alpha <= cap || beta <= cap))
        throw ToolError("not-rdp", "orders (" + std::to_string(alpha) + "," +
                                       std::to_string(beta) +
                                       ") exceed the double-point range");
    throw ToolError("inconclusive", "depressed orders exceed the cap");
}

LocalType classify_corank2(const Poly& g, const GermWork& w) {
    VarId x = w.v[0], y = w.v[1], z = w.v[2];
    Q c = second_partial_at_zero(g, x, x) / 2;
    Poly gx = derivative(g, x);
    Poly X(0);
    for (int it = 0; it <= w.cap + 1; ++it) {
        Poly fx = subst_trunc(gx, {{x, X}}, w.cap);
        if (fx.is_zero()) break;
        X = truncate_deg(X - fx * (Q(1) / (Q(2) * c)), w.cap);
    }
    Poly h = subst_trunc(g, {{x, X}}, w.cap);  // in (y, z)
    if (h.is_zero())
        throw ToolError("inconclusive", "residual vanishes to the cap");
    int o = ord_total(h);
    if (o > 3) {
        if (o > w.cap)
            throw ToolError("inconclusive", "residual order exceeds the cap");
        throw ToolError("not-rdp", "corank-2 residual has no cubic part");
    }
    Poly c3 = homogeneous_part(h, 3);
    Poly l3 = repeated_factor(c3, y, z, 3);
    if (!l3.is_zero()) {
        auto lc = linear_coeffs(l3, y, z);
        QMat L{{lc[0], lc[1]}, {Q(0), Q(0)}};
        L[1] = (lc[0] != 0) ? std::vector<Q>{Q(0), Q(1)}
                            : std::vector<Q>{Q(1), Q(0)};
        return classify_e_series(plane_change(h, y, z, L), y, z, w.cap);
    }
    Poly l2 = repeated_factor(c3, y, z, 2);
    if (!l2.is_zero()) {
        auto m = divide_exact(c3, l2 * l2);
        if (!m) throw ToolError("internal", "factor does not divide cubic");
        auto lc = linear_coeffs(l2, y, z);
        auto mc = linear_coeffs(*m, y, z);
        QMat L{{lc[0], lc[1]}, {mc[0], mc[1]}};
        return classify_d_series(plane_change(h, y, z, L), y, z, w.cap);
    }
    // Squarefree cubic (including a simple root at infinity).
    return {LocalType::kD, 4};
}

}  // namespace

Poly germ_at(const Poly& g, const std::array<VarId, 3>& vars,
             const std::array<Q, 3>& point) {
    for (VarId v : g.vars())
        if (v != vars[0] && v != vars[1] && v != vars[2])
            throw ToolError("bad-argument",
                            "germ uses unexpected variable " + var_name(v));
    std::map<VarId, Poly> shift;
    for (int i = 0; i < 3; ++i)
        shift[vars[i]] = Poly::variable(vars[i]) + Poly(point[i]);
    return subst(g, shift);
}

LocalType classify_germ(const Poly& g, const std::array<VarId, 3>& vars,
                        int cap) {
    for (VarId v : g.vars())
        if (v != vars[0] && v != vars[1] && v != vars[2])
            throw ToolError("bad-argument",
                            "germ uses unexpected variable " + var_name(v));
    // Jets past the monomial exponent limit are not representable.
    if (cap < 1 || cap > static_cast<int>(Mono::kMaxExp))
        throw ToolError("bad-argument", "truncation cap out of range");
    Poly gg = truncate_deg(g, cap);
    if (g.coeff(Mono{}) != 0) return {LocalType::kOff, 0};
    for (VarId v : vars) {
        Poly lin = coeff_in(homogeneous_part(gg, 1), v, 1);
        if (!lin.is_zero()) return {LocalType::kSmooth, 0};
    }
    // Quadratic-part Gram matrix.
    QMat M(3, std::vector<Q>(3, Q(0)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            M[i][j] = second_partial_at_zero(gg, vars[i], vars[j]) / 2;
    std::size_t r = rank(M);
    if (r == 3) return {LocalType::kA, 1};
    if (r == 0)
        throw ToolError("not-rdp", "quadratic part vanishes");

    GermWork w{vars, cap};
    auto std_vec = [](int i) {
        std::vector<Q> e(3, Q(0));
        e[i] = 1;
        return e;
    };
    std::vector<std::vector<Q>> ker = kernel(M);
    if (r == 2) {
        // Columns: two transversal directions, then the kernel direction.
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                QMat B(3, std::vector<Q>(3));
                for (int t = 0; t < 3; ++t) {
                    B[t][0] = std_vec(i)[t];
                    B[t][1] = std_vec(j)[t];
                    B[t][2] = ker[0][t];
                }
                if (det(B) != 0) return classify_corank1(linear_change(gg, vars, B), w);
            }
        throw ToolError("internal", "no transversal pair");
    }
    // r == 1: one nondegenerate direction, two kernel directions.
    for (int i = 0; i < 3; ++i) {
        if (M[i][i] == 0) continue;
        QMat B(3, std::vector<Q>(3));
        for (int t = 0; t < 3; ++t) {
            B[t][0] = std_vec(i)[t];
            B[t][1] = ker[0][t];
            B[t][2] = ker[1][t];
        }
        if (det(B) != 0) return classify_corank2(linear_change(gg, vars, B), w);
    }
    throw ToolError("internal", "no nondegenerate direction");
}

// ---------------------------------------------------------------------------
// family table
// ---------------------------------------------------------------------------

const std::vector<LocalTypeRow>& expected_local_types() {
    static const std::vector<LocalTypeRow> rows{
        {"9 (9,1)", "off", "", ""},
        {"9 (7,1)", "", "A1", "off"},
        {"10 (8,1)", "A1", "A1", "A1"},
        {"11 (7,1)", "A3", "A3", "A1"},
        {"12 (6,1)", "A5", "A3", "A3"},
        {"13 (5,1)", "A7", "A5", "A3"},
        {"14 (4,0)", "A9", "A7", "A3"},
        {"14 (4,1)", "A9", "A7", "A3"},
        {"15 (3,1)", "A11", "A9", "A3"},
        {"16 (2,1)", "A13", "A9", "A5"},
        {"17 (1,1)", "A15", "A11", "A5"},
        {"18 (0,0)", "A17", "A11", "E6"},
    };
    return rows;
}

namespace {

VarId gu() { return var_id("u"); }
VarId gv() { return var_id("v"); }
VarId gw() { return var_id("w"); }
VarId gy() { return var_id("y"); }

// Random form of the given degree in (u, v, w) vanishing at p (p has w = 1),
// solved through the w^deg coefficient.
Poly form_through(Rng& rng, int deg, const std::array<Q, 3>& p, long h) {
    Poly f;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
            if (i == 0 && j == 0) continue;
            f += Poly::variable(gu(), i) * Poly::variable(gv(), j) *
                 Poly::variable(gw(), deg - i - j) * rng.rational(h);
        }
    std::map<VarId, Q> at{{gu(), p[0]}, {gv(), p[1]}, {gw(), p[2]}};
    f -= Poly::variable(gw(), deg) * eval(f, at);
    return f;
}

LocalTypeRow sample_rank9_split(Rng& rng, int cap) {
    // Double plane branched along a w-even sextic; the center of the
    // projection is off the surface.
    Q c0 = rng.nonzero_rational(5);
    Poly se = branch_sextic(c0, random_form(rng, 2, 5), random_form(rng, 4, 5),
                            random_form(rng, 6, 5));
    Poly g = Poly::variable(gy(), 2) - subst(se, {{gw(), Poly(1)}});
    LocalTypeRow out;
    out.label = "9 (9,1)";
    out.s_at_p =
        classify_germ(germ_at(g, {gu(), gv(), gy()}, {Q(0), Q(0), Q(0)}),
                      {gu(), gv(), gy()}, cap)
            .str();
    return out;
}

LocalTypeRow sample_rank9_quartic(Rng& rng, int cap) {
    std::array<Q, 3> p{rng.rational(5), rng.rational(5), Q(1)};
    Poly C = form_through(rng, 2, p, 5);
    Poly Qr = form_through(rng, 4, p, 5);
    LocalTypeRow out;
    out.label = "9 (7,1)";
    Poly g1 = C - Qr;  // chart y = 1
    out.k_at_p1 = classify_germ(germ_at(g1, {gu(), gv(), gw()}, p),
                                {gu(), gv(), gw()}, cap)
                      .str();
    Poly g2 = subst(Poly::variable(gy(), 2) * C - Qr, {{gw(), Poly(1)}});
    out.k_at_p2 =
        classify_germ(germ_at(g2, {gu(), gv(), gy()}, {Q(0), Q(0), Q(0)}),
                      {gu(), gv(), gy()}, cap)
            .str();
    return out;
}

LocalTypeRow sample_family(int rho, int variant, Rng& rng, int cap) {
    QuarticData d = random_quartic_data(rho, variant, rng, 5);
    LocalTypeRow out;
    Poly srel = Poly::variable(gy(), 2) - qd_sextic(d);
    Poly s1 = subst(srel, {{gw(), Poly(1)}});
    out.s_at_p =
        classify_germ(germ_at(s1, {gu(), gv(), gy()}, {Q(0), Q(0), Q(0)}),
                      {gu(), gv(), gy()}, cap)
            .str();
    Poly krel = qd_quartic(d);
    Poly k1 = subst(krel, {{gy(), Poly(1)}});
    out.k_at_p1 =
        classify_germ(germ_at(k1, {gu(), gv(), gw()}, {Q(0), Q(0), Q(0)}),
                      {gu(), gv(), gw()}, cap)
            .str();
    Poly k2 = subst(krel, {{gw(), Poly(1)}});
    out.k_at_p2 =
        classify_germ(germ_at(k2, {gu(), gv(), gy()}, {Q(0), Q(0), Q(0)}),
                      {gu(), gv(), gy()}, cap)
            .str();
    return out;
}

}  // namespace

LocalTypeRow sampled_local_types(std::size_t row, std::uint64_t seed, int cap,
                                 int max_tries) {
    if (row >= expected_local_types().size())
        throw ToolError("bad-argument", "row out of range");
    Rng rng(seed + 0x9E37 * row);
    std::string last = "inconclusive";
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        int cap_use = cap + (attempt >= max_tries / 2 ? 4 : 0);
        try {
            if (row == 0) return sample_rank9_split(rng, cap_use);
            if (row == 1) return sample_rank9_quartic(rng, cap_use);
            int rho, variant = 0;
            if (row <= 5) {
                rho = 10 + static_cast<int>(row) - 2;
            } else if (row == 6) {
                rho = 14;
            } else if (row == 7) {
                rho = 14;
                variant = 1;
            } else {
                rho = 15 + static_cast<int>(row) - 8;
            }
            LocalTypeRow out = sample_family(rho, variant, rng, cap_use);
            out.label = expected_local_types()[row].label;
            return out;
        } catch (const ToolError& e) {
            if (e.kind() != "inconclusive" && e.kind() != "not-rdp" &&
                e.kind() != "genericity" && e.kind() != "search-failure")
                throw;
            last = e.what();
        }
    }
    throw ToolError("search-failure",
                    "no classifiable sample for the row: " + last);
}

}  // namespace k3
