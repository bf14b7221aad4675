#include "k3/fibration.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace k3 {

namespace {

constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

VarId base_u() { return var_id("u"); }
VarId base_v() { return var_id("v"); }

void check_coeff(const Poly& p, int deg, const char* what) {
    if (p.is_zero()) return;
    for (VarId v : p.vars())
        if (v != base_u() && v != base_v())
            throw ToolError("bad-model", std::string(what) +
                                             " uses a non-base variable " +
                                             var_name(v));
    auto d = homogeneous_degree(p);
    if (!d || *d != deg)
        throw ToolError("bad-model", std::string(what) + " not homogeneous of degree " +
                                         std::to_string(deg));
}

}  // namespace

int WeierstrassModel::weight() const {
    for (int k : {1, 2}) {
        if (A.is_zero() && B.is_zero() && C.is_zero()) break;
        bool ok = true;
        try {
            check_coeff(A, 2 * k, "A");
            check_coeff(B, 4 * k, "B");
            check_coeff(C, 6 * k, "C");
        } catch (const ToolError&) {
            ok = false;
        }
        if (ok) return k;
    }
    throw ToolError("bad-model", "coefficients fit neither weight 1 nor 2");
}

Poly c4(const WeierstrassModel& m) {
    return Q(16) * (m.A * m.A) - Q(48) * m.B;
}

Poly c6(const WeierstrassModel& m) {
    return Q(-64) * (m.A * m.A * m.A) + Q(288) * (m.A * m.B) - Q(864) * m.C;
}

Poly disc(const WeierstrassModel& m) {
    // 16 * disc_x(x^3 + A x^2 + B x + C)
    const Poly &a = m.A, &b = m.B, &c = m.C;
    return Q(16) * (Q(18) * (a * b * c) - Q(4) * (a * a * a * c) +
                    (a * a * b * b) - Q(4) * (b * b * b) - Q(27) * (c * c));
}

namespace {

struct PlaceVal {
    UPoly phi;   // monic squarefree factor; zero polynomial marks infinity
    int degree;  // degree of the place
    int vc4, vc6, vdisc;
};

// Valuations of (c4, c6, disc) at every place of the projective t-line,
// grouped by the gcd-free basis (primes inside one basis element share the
// same valuation vector).
std::vector<PlaceVal> place_valuations(const Poly& pc4, const Poly& pc6,
                                       const Poly& pd) {
    BForm b4{}, b6{}, bd{};
    bd = to_bform(pd, base_u(), base_v());
    if (!pc4.is_zero()) b4 = to_bform(pc4, base_u(), base_v());
    if (!pc6.is_zero()) b6 = to_bform(pc6, base_u(), base_v());

    std::vector<UPoly> inputs;
    std::vector<int> which;  // 0 -> c4, 1 -> c6, 2 -> disc
    if (!pc4.is_zero()) { inputs.push_back(b4.phi); which.push_back(0); }
    if (!pc6.is_zero()) { inputs.push_back(b6.phi); which.push_back(1); }
    inputs.push_back(bd.phi);
    which.push_back(2);

    GcdFreeBasis basis = gcd_free_basis(inputs);
    std::vector<PlaceVal> out;
    for (std::size_t j = 0; j < basis.basis.size(); ++j) {
        PlaceVal p;
        p.phi = basis.basis[j];
        p.degree = p.phi.deg();
        p.vc4 = pc4.is_zero() ? kInfinite : 0;
        p.vc6 = pc6.is_zero() ? kInfinite : 0;
        p.vdisc = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            int* slot = which[i] == 0 ? &p.vc4 : which[i] == 1 ? &p.vc6 : &p.vdisc;
            *slot = basis.exp[i][j];
        }
        out.push_back(std::move(p));
    }
    PlaceVal inf;  // the place u = 0; multiplicity is deg - deg(phi)
    inf.degree = 1;
    inf.vc4 = pc4.is_zero() ? kInfinite : b4.deg - b4.phi.deg();
    inf.vc6 = pc6.is_zero() ? kInfinite : b6.deg - b6.phi.deg();
    inf.vdisc = bd.deg - bd.phi.deg();
    out.push_back(std::move(inf));
    return out;
}

struct TateResult {
    std::string kodaira;
    int euler = 0;
    int root_rank = 0;
    std::string root = "-";
};

TateResult tate_classify(int a, int b, int n, const std::string& where) {
    while (a >= 4 && b >= 6 && n >= 12) {
        a -= 4;
        b -= 6;
        n -= 12;
    }
    TateResult r;
    if (a == 0) {
        r.kodaira = "I" + std::to_string(n);
        r.euler = n;
        if (n >= 2) {
            r.root = "A" + std::to_string(n - 1);
            r.root_rank = n - 1;
        }
        return r;
    }
    if (a == 2 && b == 3) {
        if (n < 6) throw ToolError("internal", "bad starred valuations at " + where);
        r.kodaira = "I" + std::to_string(n - 6) + "*";
        r.euler = n;
        r.root = "D" + std::to_string(n - 2);
        r.root_rank = n - 2;
        return r;
    }
    switch (n) {
        case 2: return {"II", 2, 0, "-"};
        case 3: return {"III", 3, 1, "A1"};
        case 4: return {"IV", 4, 2, "A2"};
        case 6: return {"I0*", 6, 4, "D4"};
        case 8: return {"IV*", 8, 6, "E6"};
        case 9: return {"III*", 9, 7, "E7"};
        case 10: return {"II*", 10, 8, "E8"};
        default:
            throw ToolError("internal", "unclassifiable valuations (" +
                                            std::to_string(a) + "," +
                                            std::to_string(b) + "," +
                                            std::to_string(n) + ") at " + where);
    }
}

// Sort key grouping fiber symbols for the printed summary: starred additive
// first (II*, III*, IV*, then In* by decreasing n), then IV, III, II, then
// In by decreasing n.
std::pair<int, int> symbol_key(const std::string& s) {
    if (s == "II*") return {0, 0};
    if (s == "III*") return {1, 0};
    if (s == "IV*") return {2, 0};
    if (s.size() > 2 && s.front() == 'I' && s.back() == '*')
        return {3, -std::stoi(s.substr(1, s.size() - 2))};
    if (s == "IV") return {4, 0};
    if (s == "III") return {5, 0};
    if (s == "II") return {6, 0};
    return {7, -std::stoi(s.substr(1))};
}

}  // namespace

std::string FiberConfiguration::summary() const {
    std::vector<std::string> syms;
    for (const auto& [s, c] : counts)
        if (c > 0) syms.push_back(s);
    std::sort(syms.begin(), syms.end(), [](const auto& a, const auto& b) {
        return symbol_key(a) < symbol_key(b);
    });
    std::string out;
    for (const auto& s : syms) {
        if (!out.empty()) out += " + ";
        int c = counts.at(s);
        if (c > 1) out += std::to_string(c);
        out += s;
    }
    return out.empty() ? "smooth" : out;
}

FiberConfiguration fiber_configuration(const WeierstrassModel& m) {
    m.weight();  // validates homogeneity and the degree pattern
    Poly pc4 = c4(m), pc6 = c6(m), pd = disc(m);
    if (pd.is_zero())
        throw ToolError("non-reduced", "discriminant vanishes identically");
    FiberConfiguration cfg;
    cfg.two_torsion = m.C.is_zero();
    for (const PlaceVal& p : place_valuations(pc4, pc6, pd)) {
        if (p.vdisc <= 0) continue;
        std::string name = p.phi.is_zero() ? "inf" : to_string(p.phi);
        TateResult t = tate_classify(p.vc4, p.vc6, p.vdisc, name);
        PlaceFiber f;
        f.place = name;
        f.place_degree = p.degree;
        f.kodaira = t.kodaira;
        f.euler = t.euler;
        f.root_rank = t.root_rank;
        f.root = t.root;
        cfg.places.push_back(std::move(f));
        cfg.counts[t.kodaira] += p.degree;
        cfg.euler_total += t.euler * p.degree;
    }
    return cfg;
}

WeierstrassModel two_isogeny(const WeierstrassModel& m) {
    if (!m.C.is_zero())
        throw ToolError("bad-argument", "2-isogeny needs the x | rhs form (C = 0)");
    WeierstrassModel d;
    d.A = -m.A;
    d.B = Q(1, 4) * (m.A * m.A) - m.B;
    d.C = Poly(0);
    return d;
}

bool same_j(const WeierstrassModel& a, const WeierstrassModel& b) {
    Poly ca = c4(a), cb = c4(b);
    return ca * ca * ca * disc(b) == cb * cb * cb * disc(a);
}

ClosureIso certify_closure_iso(const WeierstrassModel& a,
                               const WeierstrassModel& b) {
    ClosureIso r;
    r.same_j = same_j(a, b);
    Poly da = disc(a), db = disc(b);
    if (da.is_zero() || db.is_zero())
        throw ToolError("non-reduced", "discriminant vanishes identically");
    BForm fa = to_bform(da, base_u(), base_v());
    BForm fb = to_bform(db, base_u(), base_v());
    GcdFreeBasis basis = gcd_free_basis({fa.phi, fb.phi});
    bool ok = (fa.deg - fa.phi.deg() - (fb.deg - fb.phi.deg())) % 6 == 0;
    for (std::size_t j = 0; j < basis.basis.size() && ok; ++j)
        if ((basis.exp[0][j] - basis.exp[1][j]) % 6 != 0) ok = false;
    r.twist_shape = ok;
    if (ok) r.scalar = basis.unit[0] / basis.unit[1];
    return r;
}

WeierstrassModel quartic_jacobian(const GenusOneModel& g) {
    if (g.q.size() != 5)
        throw ToolError("bad-model", "quartic needs coefficients q0..q4");
    const UPoly &q0 = g.q[0], &q1 = g.q[1], &q2 = g.q[2], &q3 = g.q[3],
                &q4 = g.q[4];
    UPoly I = (q0 * q4) * Q(12) - (q1 * q3) * Q(3) + q2 * q2;
    UPoly J = (q0 * q2 * q4) * Q(72) - (q0 * q3 * q3) * Q(27) -
              (q1 * q1 * q4) * Q(27) + (q1 * q2 * q3) * Q(9) -
              (q2 * q2 * q2) * Q(2);
    // disc(quartic) = (4 I^3 - J^2) / 27, so vanishing means 4 I^3 = J^2.
    if (I * I * I * Q(4) == J * J)
        throw ToolError("non-reduced", "quartic has a repeated root everywhere");
    // Strip (p^4, p^6) factors so the model is minimal at finite places.
    if (!I.is_zero() && !J.is_zero()) {
        GcdFreeBasis basis = gcd_free_basis({I, J});
        for (std::size_t j = 0; j < basis.basis.size(); ++j) {
            int e = std::min(basis.exp[0][j] / 4, basis.exp[1][j] / 6);
            for (int r = 0; r < e; ++r) {
                UPoly p4 = basis.basis[j];
                p4 = p4 * p4;
                p4 = p4 * p4;
                I = div_exact(I, p4);
                J = div_exact(J, p4 * basis.basis[j] * basis.basis[j]);
            }
        }
    } else if (!I.is_zero()) {
        std::vector<UPoly> sq = yun(I);
        for (std::size_t i = 3; i < sq.size(); ++i)  // exponent i+1 >= 4
            for (int r = 0; r < (static_cast<int>(i) + 1) / 4; ++r)
                for (int f = 0; f < 4; ++f) I = div_exact(I, sq[i]);
    } else if (!J.is_zero()) {
        std::vector<UPoly> sq = yun(J);
        for (std::size_t i = 5; i < sq.size(); ++i)
            for (int r = 0; r < (static_cast<int>(i) + 1) / 6; ++r)
                for (int f = 0; f < 6; ++f) J = div_exact(J, sq[i]);
    }
    int m = 1;
    while (4 * m < I.deg() || 6 * m < J.deg()) ++m;
    if (m != 2)
        throw ToolError("bad-model",
                        "minimal model has weight " + std::to_string(m) +
                            "/2, not a K3 fibration");
    WeierstrassModel w;
    w.A = Poly(0);
    w.B = Q(-27) * from_bform(BForm{8, I}, base_u(), base_v());
    w.C = Q(-27) * from_bform(BForm{12, J}, base_u(), base_v());
    return w;
}

GenusOneModel pencil_fibration(const Poly& conic, const Poly& quartic,
                               const std::vector<Q>& base_point, const Poly& l1,
                               const Poly& l2) {
    VarId u = var_id("u"), v = var_id("v"), w = var_id("w");
    VarId s = var_id("s"), t = var_id("t");
    if (base_point.size() != 3) throw ToolError("bad-argument", "point needs 3 coordinates");
    std::map<VarId, Q> at{{u, base_point[0]}, {v, base_point[1]}, {w, base_point[2]}};
    for (const Poly* f : {&conic, &quartic, &l1, &l2})
        if (eval(*f, at) != 0)
            throw ToolError("bad-argument", "base point must lie on both curves and the pencil");
    // Normal covector n(t) = t n1 + n2, direction d(t) = n(t) x p.
    auto covector = [&](const Poly& l) {
        std::array<Q, 3> n{};
        std::array<VarId, 3> xyz{u, v, w};
        Poly rebuilt(0);
        for (int i = 0; i < 3; ++i) {
            Poly ci = coeff_in(l, xyz[i], 1);
            if (!ci.is_zero() && !ci.is_constant())
                throw ToolError("bad-argument", "pencil members must be linear forms");
            n[i] = ci.is_zero() ? Q(0) : ci.constant_value();
            rebuilt += Poly::variable(xyz[i]) * n[i];
        }
        if (rebuilt != l)
            throw ToolError("bad-argument", "pencil members must be linear forms");
        return n;
    };
    std::array<Q, 3> n1 = covector(l1), n2 = covector(l2);
    Poly tp = Poly::variable(t);
    std::array<Poly, 3> n{tp * n1[0] + Poly(n2[0]), tp * n1[1] + Poly(n2[1]),
                          tp * n1[2] + Poly(n2[2])};
    const std::vector<Q>& p = base_point;
    std::array<Poly, 3> d{n[1] * p[2] - n[2] * p[1], n[2] * p[0] - n[0] * p[2],
                          n[0] * p[1] - n[1] * p[0]};
    if (d[0].is_zero() && d[1].is_zero() && d[2].is_zero())
        throw ToolError("genericity", "pencil direction degenerates");
    // Restrict to the line x = p + s d(t) and strip the base-point factor s.
    Poly sp = Poly::variable(s);
    std::map<VarId, Poly> line{{u, Poly(p[0]) + sp * d[0]},
                               {v, Poly(p[1]) + sp * d[1]},
                               {w, Poly(p[2]) + sp * d[2]}};
    Poly cr = subst(conic, line), qr = subst(quartic, line);
    auto strip_s = [&](const Poly& f, const char* what) {
        auto q = divide_exact(f, sp);
        if (!q) throw ToolError("internal", std::string(what) + " does not vanish at the base point");
        return *q;
    };
    Poly ct = strip_s(cr, "conic restriction");
    Poly qt = strip_s(qr, "quartic restriction");
    Poly quart = ct * qt;
    GenusOneModel g;
    if (quart.degree_in(s) > 4)
        throw ToolError("internal", "restriction not quartic");
    g.q.assign(5, UPoly());
    for (int i = 0; i <= 4; ++i) {
        Poly ci = coeff_in(quart, s, i);
        g.q[i] = ci.is_zero() ? UPoly() : to_upoly(ci, t);
    }
    Poly c0 = coeff_in(ct, s, 0), c1 = coeff_in(ct, s, 1);
    if (c1.is_zero()) throw ToolError("genericity", "conic factor degenerates");
    g.root_num = c0.is_zero() ? UPoly() : -to_upoly(c0, t);
    g.root_den = to_upoly(c1, t);
    g.root_at_infinity = false;
    return g;
}

int mw_rank(const FiberConfiguration& f, int rho) {
    int tot = 0;
    for (const auto& p : f.places) tot += p.root_rank * p.place_degree;
    return rho - 2 - tot;
}

Poly random_form(Rng& rng, int deg, long height, int v_min) {
    if (v_min > deg) throw ToolError("bad-argument", "v_min above degree");
    VarId u = base_u(), v = base_v();
    Poly out;
    for (int i = v_min; i <= deg; ++i) {
        Q ci = (i == v_min || i == deg) ? rng.nonzero_rational(height)
                                        : rng.rational(height);
        out += Poly::variable(u, deg - i) * Poly::variable(v, i) * ci;
    }
    return out;
}

std::array<int, 3> quartic_orders(int rho, int variant) {
    // (v(c2), v(e3), v(d4)) at v = 0.
    switch (rho) {
        case 10:
        case 11:
        case 12: return {0, 0, 0};
        case 13: return {0, 0, 1};
        case 14: return variant == 0 ? std::array<int, 3>{0, 1, 1}
                                     : std::array<int, 3>{0, 0, 2};
        case 15: return {0, 0, 3};
        case 16: return {1, 0, 3};
        case 17: return {1, 0, 4};
        case 18: return {2, 0, 4};
        default: throw ToolError("bad-argument", "rank must be 10..18");
    }
}

std::string frame_root_type(int rho, int variant) {
    switch (rho) {
        case 10: return "8A1";
        case 11: return "9A1";
        case 12: return "D4 + 6A1";
        case 13: return "D6 + 5A1";
        case 14: return variant == 0 ? "E7 + 5A1" : "D8 + 4A1";
        case 15: return "D10 + 3A1";
        case 16: return "D12 + 2A1";
        case 17: return "D14 + A1";
        case 18: return "D16";
        default: throw ToolError("bad-argument", "rank must be 10..18");
    }
}

std::string frame_expected_fibers(int rho, int variant) {
    switch (rho) {
        case 10: return "8I2 + 8I1";
        case 11: return "9I2 + 6I1";
        case 12: return "I0* + 6I2 + 6I1";
        case 13: return "I2* + 5I2 + 6I1";
        case 14: return variant == 0 ? "III* + 5I2 + 5I1" : "I4* + 4I2 + 6I1";
        case 15: return "I6* + 3I2 + 6I1";
        case 16: return "I8* + 2I2 + 6I1";
        case 17: return "I10* + I2 + 6I1";
        case 18: return "I12* + 6I1";
        default: throw ToolError("bad-argument", "rank must be 10..18");
    }
}

FrameInstance forced_frame_instance(int rho, int variant, Rng& rng,
                                    int max_tries) {
    std::string expected = frame_expected_fibers(rho, variant);
    VarId v = base_v();
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        FrameInstance fi;
        fi.expected = expected;
        fi.h0 = 0;
        if (rho == 10) {
            fi.a4 = random_form(rng, 4, 8);
            fi.b8 = random_form(rng, 8, 8);
        } else {
            auto ord = quartic_orders(rho, variant);
            fi.c2 = random_form(rng, 2, 8, ord[0]);
            fi.e3 = random_form(rng, 3, 8, ord[1]);
            fi.d4 = random_form(rng, 4, 8, ord[2]);
            if (rho == 11) fi.h0 = rng.nonzero_rational(8);
            Poly vp = Poly::variable(v);
            fi.a4 = vp * fi.e3 - Q(2) * fi.h0 * fi.d4;
            fi.b6pp = Q(1, 4) * (fi.e3 * fi.e3) - fi.c2 * fi.d4;
            fi.b8 = Q(1, 4) * (fi.a4 * fi.a4) - vp * vp * fi.b6pp;
            fi.d4p = fi.c2 * vp * vp - fi.h0 * (fi.e3 * vp) +
                     fi.h0 * fi.h0 * fi.d4;
        }
        fi.model = WeierstrassModel{fi.a4, fi.b8, Poly(0)};
        try {
            FiberConfiguration cfg = fiber_configuration(fi.model);
            if (cfg.summary() == expected && cfg.euler_total == 24) return fi;
        } catch (const ToolError&) {
            // degenerate sample; retry
        }
    }
    throw ToolError("search-failure", "no generic member found for rank " +
                                          std::to_string(rho) + " in " +
                                          std::to_string(max_tries) + " tries");
}

std::map<std::string, int> root_counts(const FiberConfiguration& f) {
    std::map<std::string, int> out;
    for (const auto& p : f.places)
        if (p.root != "-") out[p.root] += p.place_degree;
    return out;
}

WeierstrassModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ToolError("parse", e.what());
    }
    WeierstrassModel m;
    m.A = j.contains("A") ? parse_poly(j["A"].get<std::string>()) : Poly(0);
    m.B = j.contains("B") ? parse_poly(j["B"].get<std::string>()) : Poly(0);
    m.C = j.contains("C") ? parse_poly(j["C"].get<std::string>()) : Poly(0);
    return m;
}

std::string model_json(const WeierstrassModel& m) {
    nlohmann::ordered_json j;
    j["A"] = to_string(m.A);
    j["B"] = to_string(m.B);
    j["C"] = to_string(m.C);
    return j.dump(2);
}

}  // namespace k3
