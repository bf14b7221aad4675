#include "k3/report.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "k3/fibration.hpp"
#include "k3/germ.hpp"
#include "k3/graph.hpp"
#include "k3/lattice.hpp"
#include "k3/surface.hpp"
#include "k3/univar.hpp"

namespace k3 {

bool Report::all_pass() const {
    for (const CheckRow& r : rows)
        if (r.status != "pass" && r.status != "skipped") return false;
    return !rows.empty();
}

int Report::count(const std::string& status) const {
    int n = 0;
    for (const CheckRow& r : rows)
        if (r.status == status) ++n;
    return n;
}

namespace {

using CheckFn = std::function<std::pair<bool, std::string>()>;

void add(std::vector<CheckRow>& rows, const std::string& anchor,
         const std::string& id, const CheckFn& fn) {
    CheckRow r;
    r.id = id;
    r.anchor = anchor;
    try {
        auto [ok, detail] = fn();
        r.status = ok ? "pass" : "fail";
        r.details = detail;
    } catch (const ToolError& e) {
        r.status = "fail";
        r.details = e.what();
    }
    rows.push_back(std::move(r));
}

VarId pu() { return var_id("u"); }
VarId pv() { return var_id("v"); }
VarId pw() { return var_id("w"); }

// ---------------------------------------------------------------------------
// lattice presentations
// ---------------------------------------------------------------------------

Lattice rep(const Lattice& l, int n) {
    return lat_sum(std::vector<Lattice>(n, l));
}

struct LatticeRow {
    std::string slug;
    TwoElementary expect;
    std::vector<Lattice> pres;
};

std::vector<LatticeRow> lattice_table() {
    Lattice H = lat_H();
    Lattice H2 = lat_rescale(lat_H(), 2, "H(2)");
    Lattice A1 = lat_A(1);
    auto S = [](std::vector<Lattice> parts) { return lat_sum(parts); };
    std::vector<LatticeRow> t;
    t.push_back({"rho9", {9, 9, 1}, {S({H2, rep(A1, 7)})}});
    t.push_back({"rho10-81", {10, 8, 1}, {S({H, rep(A1, 8)})}});
    t.push_back({"rho10-60",
                 {10, 6, 0},
                 {S({H, lat_overA18()}), S({H2, lat_D(4), lat_D(4)})}});
    t.push_back({"rho11", {11, 7, 1}, {S({H, lat_D(4), rep(A1, 5)})}});
    t.push_back({"rho12",
                 {12, 6, 1},
                 {S({H, lat_D(6), rep(A1, 4)}),
                  S({H, lat_D(4), lat_D(4), rep(A1, 2)})}});
    t.push_back({"rho13",
                 {13, 5, 1},
                 {S({H, lat_E(7), rep(A1, 4)}), S({H, lat_D(8), rep(A1, 3)}),
                  S({H, lat_D(6), lat_D(4), A1})}});
    t.push_back({"rho14-40", {14, 4, 0}, {S({H, lat_D(8), lat_D(4)})}});
    t.push_back({"rho14-41",
                 {14, 4, 1},
                 {S({H, lat_E(8), rep(A1, 4)}), S({H, lat_D(10), rep(A1, 2)}),
                  S({H, lat_E(7), lat_D(4), A1}), S({H, lat_D(6), lat_D(6)})}});
    t.push_back({"rho15",
                 {15, 3, 1},
                 {S({H, lat_D(12), A1}), S({H, lat_E(8), lat_D(4), A1}),
                  S({H, lat_E(7), lat_D(6)})}});
    t.push_back({"rho16",
                 {16, 2, 1},
                 {S({H, lat_D(14)}), S({H, lat_E(8), lat_D(6)}),
                  S({H, lat_E(7), lat_E(7)})}});
    t.push_back({"rho17", {17, 1, 1}, {S({H, lat_E(8), lat_E(7)})}});
    t.push_back({"rho18", {18, 0, 0}, {S({H, lat_E(8), lat_E(8)})}});
    return t;
}

std::string te_str(const TwoElementary& t) {
    return "(" + std::to_string(t.rho) + "," + std::to_string(t.ell) + "," +
           std::to_string(t.delta) + ")";
}

}  // namespace

std::vector<CheckRow> check_lattice_presentations(const SuiteConfig&) {
    const std::string anchor = "lattice-presentations";
    std::vector<CheckRow> rows;
    for (const LatticeRow& lr : lattice_table()) {
        add(rows, anchor, "lattices." + lr.slug + ".invariants", [&] {
            for (const Lattice& l : lr.pres) {
                check_even(l);
                Signature s = lat_signature(l);
                if (s.pos != 1 || s.neg != lr.expect.rho - 1)
                    return std::make_pair(false, l.name + ": signature (" +
                                                     std::to_string(s.pos) + "," +
                                                     std::to_string(s.neg) + ")");
                TwoElementary te = two_elementary_invariants(l);
                if (te.rho != lr.expect.rho || te.ell != lr.expect.ell ||
                    te.delta != lr.expect.delta)
                    return std::make_pair(false,
                                          l.name + ": got " + te_str(te) +
                                              ", want " + te_str(lr.expect));
                Z want_det = z_pow(Z(2), lr.expect.ell);
                if (abs(lat_det(l)) != want_det)
                    return std::make_pair(false, l.name + ": |det| != 2^ell");
            }
            return std::make_pair(true, te_str(lr.expect) + " on " +
                                            std::to_string(lr.pres.size()) +
                                            " presentation(s)");
        });
        for (std::size_t i = 1; i < lr.pres.size(); ++i) {
            add(rows, anchor,
                "lattices." + lr.slug + ".iso" + std::to_string(i), [&, i] {
                    bool ok = same_two_elementary_class(lr.pres[0], lr.pres[i]);
                    return std::make_pair(ok, lr.pres[0].name + " ~ " +
                                                  lr.pres[i].name);
                });
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// frame fibrations
// ---------------------------------------------------------------------------

namespace {

std::string format_root_type(const std::map<std::string, int>& counts) {
    // Sort E first, then D, then A, each by descending index.
    std::vector<std::pair<std::string, int>> syms(counts.begin(), counts.end());
    auto key = [](const std::string& s) {
        int fam = s[0] == 'E' ? 0 : s[0] == 'D' ? 1 : 2;
        return std::make_pair(fam, -std::stoi(s.substr(1)));
    };
    std::sort(syms.begin(), syms.end(), [&](const auto& a, const auto& b) {
        return key(a.first) < key(b.first);
    });
    std::string out;
    for (const auto& [s, c] : syms) {
        if (!out.empty()) out += " + ";
        if (c > 1) out += std::to_string(c);
        out += s;
    }
    return out.empty() ? "none" : out;
}

}  // namespace

std::vector<CheckRow> check_frames(const SuiteConfig& cfg) {
    const std::string anchor = "frame-fibrations";
    std::vector<CheckRow> rows;
    const std::vector<std::pair<int, int>> cases = {
        {10, 0}, {11, 0}, {12, 0}, {13, 0}, {14, 0},
        {14, 1}, {15, 0}, {16, 0}, {17, 0}, {18, 0}};
    for (auto [rho, variant] : cases) {
        std::string slug = "rho" + std::to_string(rho) +
                           (rho == 14 ? "v" + std::to_string(variant) : "");
        add(rows, anchor, "frames." + slug, [&, rho, variant] {
            Rng rng(cfg.seed + 811 * rho + variant);
            std::string fibers = frame_expected_fibers(rho, variant);
            std::string roots = frame_root_type(rho, variant);
            for (int t = 0; t < cfg.trials; ++t) {
                FrameInstance inst =
                    forced_frame_instance(rho, variant, rng, cfg.retries);
                FiberConfiguration fc = fiber_configuration(inst.model);
                if (fc.summary() != fibers)
                    return std::make_pair(false, "fibers " + fc.summary() +
                                                     ", want " + fibers);
                if (fc.euler_total != 24)
                    return std::make_pair(
                        false, "euler " + std::to_string(fc.euler_total));
                std::string got_roots = format_root_type(root_counts(fc));
                if (got_roots != roots)
                    return std::make_pair(false, "roots " + got_roots +
                                                     ", want " + roots);
                if (mw_rank(fc, rho) != 0)
                    return std::make_pair(
                        false,
                        "section rank " + std::to_string(mw_rank(fc, rho)));
                if (!fc.two_torsion)
                    return std::make_pair(
                        false, std::string("missing 2-torsion section"));
            }
            return std::make_pair(true, std::to_string(cfg.trials) +
                                            " trials: " + fibers + "; " +
                                            roots + "; rank 0");
        });
    }
    return rows;
}

// ---------------------------------------------------------------------------
// pencil fibrations
// ---------------------------------------------------------------------------

namespace {

// Random form of the given degree in (u, v, w) vanishing at p, solved
// through the w^deg coefficient.
Poly report_form_through(Rng& rng, int deg, const std::vector<Q>& p, long h) {
    Poly f;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
            if (i == 0 && j == 0) continue;
            f += Poly::variable(pu(), i) * Poly::variable(pv(), j) *
                 Poly::variable(pw(), deg - i - j) * rng.rational(h);
        }
    std::map<VarId, Q> at{{pu(), p[0]}, {pv(), p[1]}, {pw(), p[2]}};
    f -= Poly::variable(pw(), deg) * eval(f, at);
    return f;
}

bool retryable(const ToolError& e) {
    return e.kind() == "genericity" || e.kind() == "non-reduced" ||
           e.kind() == "search-failure" || e.kind() == "singular";
}

}  // namespace

std::vector<CheckRow> check_pencils(const SuiteConfig& cfg) {
    const std::string anchor = "pencil-fibrations";
    std::vector<CheckRow> rows;

    add(rows, anchor, "pencils.rho9", [&] {
        Rng rng(cfg.seed + 90001);
        const std::string want = "7I2 + 10I1";
        for (int t = 0; t < cfg.trials; ++t) {
            for (int attempt = 0;; ++attempt) {
                try {
                    std::vector<Q> p{rng.rational(4), rng.rational(4), Q(1)};
                    Poly conic = report_form_through(rng, 2, p, 4);
                    Poly quartic = report_form_through(rng, 4, p, 4);
                    Poly l1 = Poly::variable(pu()) - Poly::variable(pw()) * p[0];
                    Poly l2 = Poly::variable(pv()) - Poly::variable(pw()) * p[1];
                    GenusOneModel g =
                        pencil_fibration(conic, quartic, p, l1, l2);
                    FiberConfiguration fc =
                        fiber_configuration(quartic_jacobian(g));
                    if (fc.summary() != want)
                        return std::make_pair(false, "fibers " + fc.summary() +
                                                         ", want " + want);
                    if (fc.euler_total != 24)
                        return std::make_pair(
                            false, "euler " + std::to_string(fc.euler_total));
                    if (mw_rank(fc, 9) != 0)
                        return std::make_pair(
                            false,
                            "section rank " + std::to_string(mw_rank(fc, 9)));
                    break;
                } catch (const ToolError& e) {
                    if (!retryable(e) || attempt + 1 >= cfg.retries) throw;
                }
            }
        }
        return std::make_pair(true, std::to_string(cfg.trials) +
                                        " trials: " + want + ", rank 0");
    });

    for (const char* which : {"shape", "tangent"}) {
        std::string id = std::string("pencils.rho10.") + which;
        bool tangent = std::string(which) == "tangent";
        add(rows, anchor, id, [&, tangent] {
            Rng rng(cfg.seed + 100003);
            const std::string want = "8I2 + 8I1";
            std::string detail;
            for (int t = 0; t < cfg.trials; ++t) {
                for (int attempt = 0;; ++attempt) {
                    try {
                        Q w0 = rng.nonzero_rational(4);
                        std::vector<Q> p{Q(1), w0 * w0, w0};
                        Poly conic = Poly::variable(pw(), 2) -
                                     Poly::variable(pu()) * Poly::variable(pv());
                        Poly c2 = random_form(rng, 2, 4);
                        Poly e3 = random_form(rng, 3, 4);
                        // Quartic coefficient solved so the curve passes
                        // through the base point.
                        Poly d4;
                        Q acc = 0;
                        for (int i = 1; i <= 4; ++i) {
                            Q di = rng.rational(4);
                            d4 += Poly::variable(pu(), 4 - i) *
                                  Poly::variable(pv(), i) * di;
                            acc += di * q_pow(w0, 2 * i);
                        }
                        std::map<VarId, Q> at1{{pu(), Q(1)}, {pv(), w0 * w0}};
                        Q d0 = -(eval(c2, at1) * w0 * w0 + eval(e3, at1) * w0 +
                                 acc);
                        d4 += Poly::variable(pu(), 4) * d0;
                        Poly quartic = c2 * Poly::variable(pw(), 2) +
                                       e3 * Poly::variable(pw()) + d4;
                        Poly l1 = Poly::variable(pw()) - Poly::variable(pu()) * w0;
                        Poly l2 = Poly::variable(pv()) - Poly::variable(pw()) * w0;
                        GenusOneModel g =
                            pencil_fibration(conic, quartic, p, l1, l2);
                        WeierstrassModel jac = quartic_jacobian(g);
                        FiberConfiguration fc = fiber_configuration(jac);
                        if (!tangent) {
                            if (fc.summary() != want)
                                return std::make_pair(
                                    false,
                                    "fibers " + fc.summary() + ", want " + want);
                            if (fc.euler_total != 24)
                                return std::make_pair(
                                    false,
                                    "euler " + std::to_string(fc.euler_total));
                            if (mw_rank(fc, 10) != 0)
                                return std::make_pair(
                                    false, "section rank " +
                                               std::to_string(mw_rank(fc, 10)));
                            detail = want + ", rank 0";
                        } else {
                            // The line tangent to the conic at the base point
                            // sits at parameter t = -w0 and must carry an I2.
                            UPoly lin({w0, Q(1)});
                            BForm bd = to_bform(disc(jac), pu(), pv());
                            BForm b4 = to_bform(c4(jac), pu(), pv());
                            int vd = valuation(bd.phi, lin);
                            int v4 = valuation(b4.phi, lin);
                            if (vd != 2 || v4 != 0)
                                return std::make_pair(
                                    false, "marked place has v(disc)=" +
                                               std::to_string(vd) + ", v(c4)=" +
                                               std::to_string(v4));
                            detail = "v(disc)=2, v(c4)=0 at the marked line";
                        }
                        break;
                    } catch (const ToolError& e) {
                        if (!retryable(e) || attempt + 1 >= cfg.retries) throw;
                    }
                }
            }
            return std::make_pair(true,
                                  std::to_string(cfg.trials) + " trials: " + detail);
        });
    }
    return rows;
}

// ---------------------------------------------------------------------------
// overlattice glue
// ---------------------------------------------------------------------------

namespace {

Z gram_pair(const ZMat& g, const std::vector<Z>& a, const std::vector<Z>& b) {
    Z out = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out += a[i] * g[i][j] * b[j];
    return out;
}

}  // namespace

std::vector<CheckRow> check_overlattices(const SuiteConfig&) {
    const std::string anchor = "overlattice-glue";
    std::vector<CheckRow> rows;

    add(rows, anchor, "overlattices.glue10", [&] {
        ZMat gram(10, std::vector<Z>(10, Z(0)));
        gram[0][0] = 2;
        gram[1][1] = -2;
        for (int i = 2; i < 10; ++i) gram[i][i] = -2;
        Lattice base = lat_span(gram, "<2>+<-2>+8A1");
        std::vector<Q> glue(10, Q(1, 2));
        glue[0] = glue[1] = 0;
        Lattice over = overlattice_from_glue(base, glue, "glued");
        check_even(over);
        if (abs(lat_det(over)) != Z(256))
            return std::make_pair(false, std::string("|det| != 2^8"));
        TwoElementary te = two_elementary_invariants(over);
        if (te.rho != 10 || te.ell != 8 || te.delta != 1)
            return std::make_pair(false, "invariants " + te_str(te));
        Lattice frame = lat_sum({lat_H(), rep(lat_A(1), 8)});
        bool same = same_two_elementary_class(over, frame);
        return std::make_pair(same, "index-2 glue of <2>+<-2>+8A1 is " +
                                        te_str(te) + ", class of H+8A1");
    });

    add(rows, anchor, "overlattices.half-sum", [&] {
        Lattice n = lat_overA18();
        check_even(n);
        if (abs(lat_det(n)) != Z(64))
            return std::make_pair(false, std::string("|det| != 2^6"));
        TwoElementary te = two_elementary_invariants(n);
        bool ok = te.rho == 8 && te.ell == 6 && te.delta == 0;
        return std::make_pair(ok, "all-half glue on 8A1 has " + te_str(te));
    });

    add(rows, anchor, "overlattices.even-embedding", [&] {
        Lattice a = lat_sum({lat_H(), lat_overA18()});
        Lattice b = lat_sum({lat_rescale(lat_H(), 2, "H(2)"), lat_D(4), lat_D(4)});
        bool ok = same_two_elementary_class(a, b) && lat_det(a) == lat_det(b);
        return std::make_pair(ok, a.name + " ~ " + b.name);
    });

    add(rows, anchor, "overlattices.frame-classes", [&] {
        // Basis f1, f2, e1..e8 of H + 8A1.
        Lattice l = lat_sum({lat_H(), rep(lat_A(1), 8)});
        auto vec = [&](int a, int b, int e_at, int e_all) {
            std::vector<Z> v(10, Z(0));
            v[0] = a;
            v[1] = b;
            if (e_all) for (int i = 2; i < 10; ++i) v[i] = -1;
            if (e_at >= 0) v[2 + e_at] += -1;
            return v;
        };
        std::vector<Z> F = vec(4, 2, -1, 1);
        std::vector<Z> A0 = vec(-1, 1, -1, 0);
        if (gram_pair(l.gram, F, F) != 0)
            return std::make_pair(false, "F^2 != 0");
        if (gram_pair(l.gram, F, A0) != 2)
            return std::make_pair(false, "F.A0 != 2");
        if (gram_pair(l.gram, A0, A0) != -2)
            return std::make_pair(false, "A0^2 != -2");
        for (int i = 0; i < 8; ++i) {
            std::vector<Z> Ai = vec(1, 0, i, 0);       // f1 - e_i
            std::vector<Z> Bi = vec(0, -1, i, 0);      // -f2 - e_i
            for (const auto& c : {Ai, Bi}) {
                if (gram_pair(l.gram, c, c) != -2)
                    return std::make_pair(false, "component self-intersection");
                if (gram_pair(l.gram, A0, c) != 1)
                    return std::make_pair(false, "A0 pairing != 1");
            }
        }
        return std::make_pair(true,
                              "fiber F and the 17 printed classes pair as listed");
    });

    add(rows, anchor, "overlattices.degree4", [&] {
        Lattice l = lat_sum({lat_H(), rep(lat_A(1), 8)});
        std::vector<Z> D2(10, Z(-1)), b1(10, Z(0)), a1(10, Z(0)), H(10, Z(0));
        D2[0] = D2[1] = 3;
        b1[9] = 1;                    // e8
        a1[0] = -1; a1[1] = 1;        // -f1 + f2
        for (int i = 0; i < 10; ++i) H[i] = D2[i] + b1[i];
        if (gram_pair(l.gram, D2, D2) != 2)
            return std::make_pair(false, "D2^2 != 2");
        if (gram_pair(l.gram, H, H) != 4)
            return std::make_pair(false, "H^2 != 4");
        if (gram_pair(l.gram, H, a1) != 0 || gram_pair(l.gram, H, b1) != 0)
            return std::make_pair(false, "H not orthogonal to the split");
        if (gram_pair(l.gram, D2, b1) != 2)
            return std::make_pair(false, "D2.b1 != 2");
        return std::make_pair(true, "H = D2 + b1 splits with H^2 = 4, D2^2 = 2");
    });

    return rows;
}

// ---------------------------------------------------------------------------
// map catalog
// ---------------------------------------------------------------------------

std::vector<CheckRow> check_map_catalog(const SuiteConfig& cfg) {
    const std::string anchor = "map-catalog";
    std::vector<CheckRow> rows;
    std::vector<MapCheck> checks;
    try {
        checks = run_map_catalog(cfg.seed, cfg.trials);
    } catch (const ToolError& e) {
        CheckRow r;
        r.id = "maps.catalog";
        r.anchor = anchor;
        r.status = "fail";
        r.details = e.what();
        rows.push_back(std::move(r));
        return rows;
    }
    for (const MapCheck& c : checks) {
        CheckRow r;
        r.id = "maps." + c.id;
        r.anchor = anchor;
        r.status = c.ok ? "pass" : "fail";
        r.details = c.detail;
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// local types
// ---------------------------------------------------------------------------

std::vector<CheckRow> check_local_types(const SuiteConfig& cfg) {
    const std::string anchor = "local-types";
    static const char* slugs[] = {"rho9-91", "rho9-71", "rho10", "rho11",
                                  "rho12", "rho13", "rho14-40", "rho14-41",
                                  "rho15", "rho16", "rho17", "rho18"};
    std::vector<CheckRow> rows;
    const auto& table = expected_local_types();
    for (std::size_t i = 0; i < table.size(); ++i) {
        add(rows, anchor, std::string("localtypes.") + slugs[i], [&, i] {
            const LocalTypeRow& want = table[i];
            LocalTypeRow got =
                sampled_local_types(i, cfg.seed, cfg.truncation, cfg.retries);
            auto cmp = [](const std::string& w, const std::string& g) {
                return w.empty() || w == g;
            };
            std::string detail = "S:" + (want.s_at_p.empty() ? "-" : got.s_at_p) +
                                 " K:" +
                                 (want.k_at_p1.empty() ? "-" : got.k_at_p1) +
                                 "/" +
                                 (want.k_at_p2.empty() ? "-" : got.k_at_p2);
            bool ok = cmp(want.s_at_p, got.s_at_p) &&
                      cmp(want.k_at_p1, got.k_at_p1) &&
                      cmp(want.k_at_p2, got.k_at_p2);
            if (!ok)
                detail += " (want S:" + want.s_at_p + " K:" + want.k_at_p1 +
                          "/" + want.k_at_p2 + ")";
            return std::make_pair(ok, detail);
        });
    }
    return rows;
}

// ---------------------------------------------------------------------------
// curve graphs
// ---------------------------------------------------------------------------

std::vector<CheckRow> check_graphs(const SuiteConfig& cfg) {
    const std::string anchor = "curve-graphs";
    static const char* names[] = {"pic10", "pic11", "pic12", "pic13", "pic14",
                                  "pic14p", "pic15", "pic16", "pic17", "pic18"};
    std::vector<CheckRow> rows;
    for (const char* name : names) {
        GraphCase gc;
        std::string base = std::string("graphs.") + name;
        try {
            gc = load_graph_case(cfg.data_dir + "/graphs/" + name + ".json");
        } catch (const ToolError& e) {
            CheckRow r;
            r.id = base + ".load";
            r.anchor = anchor;
            r.status = "fail";
            r.details = e.what();
            rows.push_back(std::move(r));
            continue;
        }
        add(rows, anchor, base + ".lattice", [&] {
            NsCheck ns = ns_check(gc.g, gc.expect);
            return std::make_pair(ns.matches, "curve classes span " +
                                                  te_str(ns.got) + ", want " +
                                                  te_str(gc.expect));
        });
        if (gc.b.empty() && gc.a.empty()) {
            // No degree-4 splitting listed for this case; the degree-2 class
            // still has to square to 2.
            add(rows, anchor, base + ".d2", [&] {
                Z sq = self_int(gc.g, gc.d2);
                return std::make_pair(sq == 2,
                                      "D2^2 = " + sq.get_str() + ", expected 2");
            });
        } else {
            add(rows, anchor, base + ".split", [&] {
                SplitCheck sc = check_polarization_split(
                    gc.g, gc.d2, gc.b, gc.b_weights, gc.a, gc.b_combined);
                std::string detail = sc.ok ? "H = D2 + fork splits as printed"
                                           : sc.failures.front();
                return std::make_pair(sc.ok, detail);
            });
        }
        if (gc.a_type.empty() && gc.b_type.empty()) {
            CheckRow r;
            r.id = base + ".chains";
            r.anchor = anchor;
            r.status = "skipped";
            r.details = "chain types not listed for this case";
            rows.push_back(std::move(r));
        } else {
            add(rows, anchor, base + ".chains", [&] {
                if (!gc.a_type.empty()) {
                    std::string got = chain_type(gc.g, gc.a);
                    if (got != gc.a_type)
                        return std::make_pair(false, "a-chain " + got +
                                                         ", want " + gc.a_type);
                }
                if (!gc.b_type.empty()) {
                    std::string got = chain_type(gc.g, gc.b);
                    if (got != gc.b_type)
                        return std::make_pair(false, "b-chain " + got +
                                                         ", want " + gc.b_type);
                }
                return std::make_pair(true, "a: " + gc.a_type + ", b: " +
                                                gc.b_type);
            });
        }
        add(rows, anchor, base + ".nef", [&] {
            Divisor h = gc.d2;
            for (std::size_t j = 0; j < gc.b.size(); ++j)
                h[gc.b[j]] += gc.b_weights[j];
            NefReport nr = nef_against_listed(gc.g, h);
            if (!nr.ok)
                return std::make_pair(false, "H meets " + nr.witness +
                                                 " negatively");
            NefReport nd = nef_against_listed(gc.g, gc.d2);
            if (!nd.ok)
                return std::make_pair(false, "D2 meets " + nd.witness +
                                                 " negatively");
            return std::make_pair(true, std::string("H and D2 nonnegative on every curve"));
        });
        if (!gc.involution.empty()) {
            add(rows, anchor, base + ".involution", [&] {
                InvolutionCheck ic = check_involution(gc.g, gc.involution, gc.d2);
                bool ok = ic.preserves_pairing && ic.fixes_divisor;
                return std::make_pair(
                    ok, ok ? "symmetry preserves the pairing and fixes D2"
                           : (!ic.preserves_pairing ? "pairing not preserved"
                                                    : "D2 not fixed"));
            });
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// del Pezzo model
// ---------------------------------------------------------------------------

std::vector<CheckRow> check_del_pezzo(const SuiteConfig& cfg) {
    const std::string anchor = "del-pezzo-model";
    std::vector<CheckRow> rows;
    Rng rng(cfg.seed + 500009);
    DelPezzo dp;
    bool built = false;
    std::string err;
    for (int attempt = 0; attempt < cfg.retries && !built; ++attempt) {
        try {
            dp = del_pezzo_from_points(random_octet(rng, 3));
            built = true;
        } catch (const ToolError& e) {
            if (!retryable(e)) {
                err = e.what();
                break;
            }
            err = e.what();
        }
    }
    if (!built) {
        CheckRow r;
        r.id = "delpezzo.build";
        r.anchor = anchor;
        r.status = "fail";
        r.details = err;
        rows.push_back(std::move(r));
        return rows;
    }
    add(rows, anchor, "delpezzo.dims", [&] {
        auto d = nodal_system_dims(dp.pts);
        bool ok = d[0] == 2 && d[1] == 4 && d[2] == 7;
        return std::make_pair(ok, "cubics " + std::to_string(d[0]) +
                                      ", sextics " + std::to_string(d[1]) +
                                      ", nonics " + std::to_string(d[2]));
    });
    add(rows, anchor, "delpezzo.relation", [&] {
        bool ok = del_pezzo_residual(dp).is_zero();
        return std::make_pair(ok, "R^2 = c0 W^3 + c2 W^2 + c4 W + c6 on the nonic");
    });
    add(rows, anchor, "delpezzo.model", [&] {
        WeierstrassModel wm = coefficient_model(dp.c0, dp.c2, dp.c4, dp.c6);
        if (wm.weight() != 1)
            return std::make_pair(false, std::string("model weight != 1"));
        FiberConfiguration fc = fiber_configuration(wm);
        bool ok = fc.euler_total == 12;
        return std::make_pair(ok, "coefficient model: " + fc.summary() +
                                      ", euler " +
                                      std::to_string(fc.euler_total));
    });
    add(rows, anchor, "delpezzo.branch", [&] {
        Poly bs = branch_sextic(dp.c0, dp.c2, dp.c4, dp.c6);
        bool ok = certify_plane_curve_smooth(bs);
        return std::make_pair(ok, ok ? "branch sextic certified smooth"
                                     : "smoothness certificate failed");
    });
    return rows;
}

// ---------------------------------------------------------------------------
// tangent conics
// ---------------------------------------------------------------------------

std::vector<CheckRow> check_conics(const SuiteConfig& cfg) {
    const std::string anchor = "tangent-conics";
    std::vector<CheckRow> rows;
    add(rows, anchor, "conics.witness", [&] {
        Rng rng(cfg.seed + 700001);
        for (int t = 0; t < cfg.trials; ++t) {
            ConicInstance inst = random_conic_instance(rng, 6);
            if (!check_conic_witness(inst.c0, inst.c2, inst.c4, inst.c6, inst.wit))
                return std::make_pair(false,
                                      "constructed witness rejected at trial " +
                                          std::to_string(t));
        }
        return std::make_pair(true, std::to_string(cfg.trials) +
                                        " witnesses verified");
    });
    add(rows, anchor, "conics.reject", [&] {
        Rng rng(cfg.seed + 700002);
        int rejected = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            ConicInstance inst = random_conic_instance(rng, 6);
            for (int k = 0; k < 2; ++k) {
                ConicInstance bad = inst;
                Q eps = rng.nonzero_rational(4);
                int kind = (t + k) % 3;
                if (kind == 0)
                    bad.wit.q3 += Poly::variable(pu(), 3) * eps;
                else if (kind == 1)
                    bad.c6 += Poly::variable(pu(), 6) * eps;
                else
                    bad.wit.p2 += Poly::variable(pu(), 2) * eps;
                if (check_conic_witness(bad.c0, bad.c2, bad.c4, bad.c6, bad.wit))
                    return std::make_pair(false, std::string("corrupted witness accepted"));
                ++rejected;
            }
        }
        return std::make_pair(true, std::to_string(rejected) +
                                        " corrupted witnesses rejected");
    });
    return rows;
}

// ---------------------------------------------------------------------------
// suite driver and serialization
// ---------------------------------------------------------------------------

namespace {

bool prefix_of(const std::string& pre, const std::string& s) {
    return s.rfind(pre, 0) == 0;
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
    struct Group {
        const char* prefix;
        std::vector<CheckRow> (*fn)(const SuiteConfig&);
    };
    static const Group groups[] = {
        {"lattices", check_lattice_presentations},
        {"frames", check_frames},
        {"pencils", check_pencils},
        {"overlattices", check_overlattices},
        {"maps", check_map_catalog},
        {"localtypes", check_local_types},
        {"graphs", check_graphs},
        {"delpezzo", check_del_pezzo},
        {"conics", check_conics},
    };
    Report out;
    for (const Group& g : groups) {
        bool want_group = cfg.only.empty();
        for (const std::string& o : cfg.only)
            if (prefix_of(o, g.prefix) || prefix_of(g.prefix, o))
                want_group = true;
        if (!want_group) continue;
        for (CheckRow& row : g.fn(cfg)) {
            bool want_row = cfg.only.empty();
            for (const std::string& o : cfg.only)
                if (prefix_of(o, row.id)) want_row = true;
            if (want_row) out.rows.push_back(std::move(row));
        }
    }
    return out;
}

std::string report_json(const Report& r, const SuiteConfig& cfg) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["rows"] = nlohmann::ordered_json::array();
    for (const CheckRow& row : r.rows) {
        nlohmann::ordered_json o;
        o["id"] = row.id;
        o["anchor"] = row.anchor;
        o["status"] = row.status;
        o["details"] = row.details;
        j["rows"].push_back(std::move(o));
    }
    nlohmann::ordered_json s;
    s["total"] = r.rows.size();
    s["pass"] = r.count("pass");
    s["fail"] = r.count("fail");
    s["skipped"] = r.count("skipped");
    s["all_pass"] = r.all_pass();
    j["summary"] = std::move(s);
    return j.dump(2) + "\n";
}

std::string report_markdown(const Report& r, const SuiteConfig& cfg) {
    std::ostringstream os;
    os << "# verification report\n\n";
    os << "seed " << cfg.seed << ", trials " << cfg.trials << "\n\n";
    os << "| check | status | details |\n|---|---|---|\n";
    for (const CheckRow& row : r.rows)
        os << "| " << row.id << " | " << row.status << " | " << row.details
           << " |\n";
    os << "\n" << (r.all_pass() ? "all checks passed" : "FAILURES PRESENT")
       << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
       << r.count("skipped") << " skipped\n";
    return os.str();
}

}  // namespace k3
