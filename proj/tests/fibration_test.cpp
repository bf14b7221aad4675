#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "k3/fibration.hpp"

using namespace k3;

namespace {

template <class F>
std::string thrown_kind(F&& f) {
    try {
        f();
    } catch (const ToolError& e) {
        return e.kind();
    }
    return "<none>";
}

Poly U(unsigned e = 1) { return Poly::variable("u", e); }
Poly Vv(unsigned e = 1) { return Poly::variable("v", e); }

// q(root_num / root_den) = 0, homogenized: sum q[i] num^i den^(4-i).
bool marked_root_is_root(const GenusOneModel& g) {
    if (g.root_at_infinity) return g.q[4].is_zero();
    UPoly acc(0);
    for (int i = 0; i <= 4; ++i) {
        UPoly term = g.q[i];
        for (int k = 0; k < i; ++k) term *= g.root_num;
        for (int k = i; k < 4; ++k) term *= g.root_den;
        acc += term;
    }
    return acc.is_zero();
}

}  // namespace

TEST_SUITE("fibration") {

TEST_CASE("weight recognition") {
    WeierstrassModel k3m{U(4) + Vv(4), U(4) * Vv(4), Poly(0)};
    CHECK(k3m.weight() == 2);
    WeierstrassModel rational{U(2), U(4), U(6)};
    CHECK(rational.weight() == 1);
    WeierstrassModel bad{U(4), U(4), Poly(0)};
    CHECK(thrown_kind([&] { bad.weight(); }) == "bad-model");
    WeierstrassModel nonhom{U(2) + U(1), Poly(0), Poly(0)};
    CHECK(thrown_kind([&] { nonhom.weight(); }) == "bad-model");
}

TEST_CASE("c4, c6, disc satisfy the 1728 identity") {
    // c4^3 - c6^2 = 1728 disc, for arbitrary coefficients.
    Rng rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        WeierstrassModel m{random_form(rng, 4, 5), random_form(rng, 8, 5),
                           random_form(rng, 12, 5)};
        Poly lhs = pow(c4(m), 3) - pow(c6(m), 2);
        CHECK(lhs == Q(1728) * disc(m));
    }
}

TEST_CASE("multiplicative fibers of the torsion family") {
    // y^2 = x(x^2 + (u^4+v^4) x + u^4 v^4): disc = 16 u^8 v^8 (u^4-v^4)^2.
    WeierstrassModel m{U(4) + Vv(4), U(4) * Vv(4), Poly(0)};
    FiberConfiguration fc = fiber_configuration(m);
    CHECK(fc.euler_total == 24);
    CHECK(fc.two_torsion);
    CHECK(fc.counts == std::map<std::string, int>{{"I8", 2}, {"I2", 4}});
    CHECK(fc.summary() == "2I8 + 4I2");
    std::map<std::string, int> roots = root_counts(fc);
    CHECK(roots == std::map<std::string, int>{{"A7", 2}, {"A1", 4}});
    CHECK(mw_rank(fc, 20) == 0);
}

TEST_CASE("additive fibers and non-minimal stripping") {
    // B = u^3 v^5 alone: c6 = 0, disc = -64 u^9 v^15; the v-end is
    // non-minimal (valuation 15 >= 12) and strips down to III.
    WeierstrassModel m{Poly(0), U(3) * Vv(5), Poly(0)};
    FiberConfiguration fc = fiber_configuration(m);
    CHECK(fc.euler_total == 12);
    CHECK(fc.counts == std::map<std::string, int>{{"III", 1}, {"III*", 1}});
    CHECK(fc.summary() == "III* + III");
}

TEST_CASE("cusp fibers from a pure c-term") {
    WeierstrassModel iv{Poly(0), Poly(0), U(2) * Vv(10)};
    FiberConfiguration f4 = fiber_configuration(iv);
    CHECK(f4.counts == std::map<std::string, int>{{"IV", 1}, {"IV*", 1}});
    CHECK(f4.summary() == "IV* + IV");
    WeierstrassModel ii{Poly(0), Poly(0), U(1) * Vv(11)};
    FiberConfiguration f2 = fiber_configuration(ii);
    CHECK(f2.counts == std::map<std::string, int>{{"II", 1}, {"II*", 1}});
    CHECK(f2.summary() == "II* + II");
}

TEST_CASE("I0* fibers via both classifier routes") {
    // c6 = 0 route: switch on disc valuation 6.
    WeierstrassModel a{Poly(0), U(2) * Vv(6), Poly(0)};
    FiberConfiguration fa = fiber_configuration(a);
    CHECK(fa.counts == std::map<std::string, int>{{"I0*", 2}});
    CHECK(fa.summary() == "2I0*");
    CHECK(fa.euler_total == 12);
    for (const auto& p : fa.places) CHECK(p.root == "D4");
    // (v(c4), v(c6)) = (2, 3) route.
    WeierstrassModel b{Poly(0), U(2) * Vv(6), U(3) * Vv(9)};
    FiberConfiguration fb = fiber_configuration(b);
    CHECK(fb.counts == std::map<std::string, int>{{"I0*", 2}});
    CHECK(fb.euler_total == 12);
}

TEST_CASE("degenerate models are rejected") {
    WeierstrassModel zero_disc{U(4), Poly(0), Poly(0)};
    CHECK(thrown_kind([&] { fiber_configuration(zero_disc); }) ==
          "non-reduced");
}

TEST_CASE("2-isogeny duality") {
    WeierstrassModel m{U(4) + Vv(4), U(4) * Vv(4), Poly(0)};
    WeierstrassModel dual = two_isogeny(m);
    CHECK(dual.C.is_zero());
    // The isogenous surface is again elliptic K3 with two-torsion.
    FiberConfiguration fd = fiber_configuration(dual);
    CHECK(fd.euler_total == 24);
    CHECK(fd.summary() == "6I4");
    // Applying the quotient twice returns the original model on the nose.
    WeierstrassModel back = two_isogeny(dual);
    CHECK(back.A == m.A);
    CHECK(back.B == m.B);
    CHECK(back.C == m.C);
    // Isogenous, not isomorphic: j differs.
    CHECK(!same_j(m, dual));
    CHECK(same_j(m, back));
    WeierstrassModel with_c{Poly(0), Poly(0), U(2) * Vv(10)};
    CHECK(thrown_kind([&] { two_isogeny(with_c); }) == "bad-argument");
}

TEST_CASE("closure isomorphism certificate") {
    WeierstrassModel m{U(4) + Vv(4), U(4) * Vv(4), Poly(0)};
    // Constant rescaling (A, B, C) -> (l^2 A, l^4 B, l^6 C) is a twist.
    WeierstrassModel tw{Q(4) * m.A, Q(16) * m.B, Q(64) * m.C};
    ClosureIso iso = certify_closure_iso(m, tw);
    CHECK(iso.same_j);
    CHECK(iso.twist_shape);
    ClosureIso not_iso = certify_closure_iso(m, two_isogeny(m));
    CHECK(!not_iso.same_j);
}

TEST_CASE("quartic jacobian fixed oracle") {
    // q(S) = 2 S^4 + t^4 S^2 + 1: I = t^8 + 24, J = 144 t^4 - 2 t^12,
    // 4I^3 - J^2 = 864 (t^8 - 8)^2, so I8 at infinity plus I2 over t^8 = 8.
    GenusOneModel g;
    g.q = {UPoly(1), UPoly(0), pow(UPoly::t(), 4), UPoly(0), UPoly(2)};
    g.root_at_infinity = true;  // marker unused by the jacobian
    WeierstrassModel jac = quartic_jacobian(g);
    CHECK(jac.weight() == 2);
    CHECK(jac.A.is_zero());
    FiberConfiguration fc = fiber_configuration(jac);
    CHECK(fc.euler_total == 24);
    CHECK(fc.summary() == "I8 + 8I2");
    // Reversing the quartic (S -> 1/S) leaves I and J unchanged.
    GenusOneModel rev = g;
    std::swap(rev.q[0], rev.q[4]);
    std::swap(rev.q[1], rev.q[3]);
    WeierstrassModel jr = quartic_jacobian(rev);
    CHECK(jr.B == jac.B);
    CHECK(jr.C == jac.C);
}

TEST_CASE("quartic jacobian invariance under shifts and scalings") {
    GenusOneModel g;
    g.q = {UPoly(1), UPoly(0), pow(UPoly::t(), 4), UPoly(0), UPoly(2)};
    // S -> S + 1: q'_j = sum_{i >= j} binom(i, j) q_i.
    long binom[5][5] = {};
    for (int i = 0; i < 5; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    GenusOneModel sh;
    sh.q.assign(5, UPoly(0));
    for (int j = 0; j < 5; ++j)
        for (int i = j; i < 5; ++i) sh.q[j] += g.q[i] * Q(binom[i][j]);
    WeierstrassModel ja = quartic_jacobian(g), jb = quartic_jacobian(sh);
    CHECK(ja.B == jb.B);
    CHECK(ja.C == jb.C);
    // Scaling q by a square only twists: same j.
    GenusOneModel sc = g;
    for (auto& c : sc.q) c *= Q(4);
    WeierstrassModel js = quartic_jacobian(sc);
    CHECK(same_j(ja, js));
    CHECK(certify_closure_iso(ja, js).twist_shape);
}

TEST_CASE("quartic jacobian rejections") {
    GenusOneModel sq;  // (S^2 + t^4)^2 is a square: no smooth fibers
    sq.q = {pow(UPoly::t(), 8), UPoly(0), pow(UPoly::t(), 4) * Q(2), UPoly(0),
            UPoly(1)};
    CHECK(thrown_kind([&] { quartic_jacobian(sq); }) == "non-reduced");
    GenusOneModel small;  // rational elliptic, not weight 2
    small.q = {UPoly(1), UPoly(0), UPoly::t(), UPoly(0), UPoly(1)};
    CHECK(thrown_kind([&] { quartic_jacobian(small); }) == "bad-model");
    GenusOneModel short_q;
    short_q.q = {UPoly(1), UPoly(0), UPoly(1)};
    CHECK(thrown_kind([&] { quartic_jacobian(short_q); }) == "bad-model");
}

TEST_CASE("pencil of lines through a conic point") {
    Poly conic = U() * Vv() - pow(Poly::variable("w"), 2);
    Poly w = Poly::variable("w");
    // Quartic through the base point (0 : 1 : 0), otherwise generic.
    Poly quartic = pow(U(), 4) + U() * pow(w, 3) + pow(w, 4) +
                   pow(Vv(), 3) * w + U() * Vv() * w * w;
    GenusOneModel g =
        pencil_fibration(conic, quartic, {Q(0), Q(1), Q(0)}, U(), w);
    REQUIRE(g.q.size() == 5);
    CHECK(marked_root_is_root(g));
    WeierstrassModel jac = quartic_jacobian(g);
    CHECK(fiber_configuration(jac).euler_total == 24);
    CHECK(thrown_kind([&] {
              pencil_fibration(conic, quartic, {Q(1), Q(1), Q(0)}, U(), w);
          }) == "bad-argument");
}

TEST_CASE("random forms have exact end valuations") {
    Rng a(11), b(11);
    Poly f = random_form(a, 6, 9, 2);
    CHECK(f == random_form(b, 6, 9, 2));  // reproducible
    CHECK(homogeneous_degree(f) == 6);
    VarId v = var_id("v");
    CHECK(coeff_in(f, v, 0).is_zero());
    CHECK(coeff_in(f, v, 1).is_zero());
    CHECK(!coeff_in(f, v, 2).is_zero());
    CHECK(!coeff_in(f, v, 6).is_zero());
    CHECK(thrown_kind([&] { random_form(a, 2, 5, 3); }) == "bad-argument");
}

TEST_CASE("forced vanishing orders per rank") {
    CHECK(quartic_orders(10, 0) == std::array<int, 3>{0, 0, 0});
    CHECK(quartic_orders(13, 0) == std::array<int, 3>{0, 0, 1});
    CHECK(quartic_orders(14, 0) == std::array<int, 3>{0, 1, 1});
    CHECK(quartic_orders(14, 1) == std::array<int, 3>{0, 0, 2});
    CHECK(quartic_orders(18, 0) == std::array<int, 3>{2, 0, 4});
    CHECK(thrown_kind([] { quartic_orders(9, 0); }) == "bad-argument");
    CHECK(frame_root_type(12, 0) == "D4 + 6A1");
    CHECK(frame_expected_fibers(12, 0) == "I0* + 6I2 + 6I1");
    CHECK(frame_root_type(14, 1) == "D8 + 4A1");
    CHECK(frame_expected_fibers(14, 1) == "I4* + 4I2 + 6I1");
}

TEST_CASE("forced frame instance carries its certificates") {
    Rng rng(5);
    FrameInstance fi = forced_frame_instance(12, 0, rng);
    CHECK(fi.model.weight() == 2);
    CHECK(fi.model.C.is_zero());
    CHECK(fi.model.A == fi.a4);
    CHECK(fi.model.B == fi.b8);
    // b8 = a4^2 / 4 - v^2 b6''.
    CHECK(fi.b8 == Q(1, 4) * fi.a4 * fi.a4 -
                       pow(Poly::variable("v"), 2) * fi.b6pp);
    FiberConfiguration fc = fiber_configuration(fi.model);
    CHECK(fc.summary() == fi.expected);
    CHECK(fc.summary() == frame_expected_fibers(12, 0));
    CHECK(fc.euler_total == 24);
    CHECK(fc.two_torsion);
    CHECK(root_counts(fc) ==
          std::map<std::string, int>{{"D4", 1}, {"A1", 6}});
    CHECK(mw_rank(fc, 12) == 0);
}

TEST_CASE("model json round-trip") {
    WeierstrassModel m{U(4) + Vv(4), U(4) * Vv(4), Poly(0)};
    WeierstrassModel back = model_from_json(model_json(m));
    CHECK(back.A == m.A);
    CHECK(back.B == m.B);
    CHECK(back.C == m.C);
    WeierstrassModel partial = model_from_json("{\"A\": \"u^2\"}");
    CHECK(partial.A == U(2));
    CHECK(partial.B.is_zero());
    CHECK(partial.C.is_zero());
    CHECK(thrown_kind([] { model_from_json("nope{{"); }) == "parse");
    CHECK(thrown_kind([] { model_from_json("{\"A\": \"++\"}"); }) == "parse");
}

}  // TEST_SUITE
