#include <string>
#include <vector>

#include "doctest.h"
#include "k3/lattice.hpp"

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

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("root lattice determinants") {
    for (int n = 1; n <= 5; ++n) CHECK(abs(lat_det(lat_A(n))) == n + 1);
    for (int n = 4; n <= 7; ++n) CHECK(abs(lat_det(lat_D(n))) == 4);
    CHECK(abs(lat_det(lat_E(6))) == 3);
    CHECK(abs(lat_det(lat_E(7))) == 2);
    CHECK(abs(lat_det(lat_E(8))) == 1);
    CHECK(lat_det(lat_H()) == -1);
    CHECK(thrown_kind([] { lat_A(0); }) == "bad-argument");
    CHECK(thrown_kind([] { lat_D(3); }) == "bad-argument");
    CHECK(thrown_kind([] { lat_E(5); }) == "bad-argument");
}

TEST_CASE("signatures and evenness") {
    Signature h = lat_signature(lat_H());
    CHECK(h.pos == 1);
    CHECK(h.neg == 1);
    Signature e8 = lat_signature(lat_E(8));
    CHECK(e8.pos == 0);
    CHECK(e8.neg == 8);
    CHECK_NOTHROW(check_even(lat_E(7)));
    // lat_span validates evenness itself; build the odd Gram directly too.
    CHECK(thrown_kind([] { lat_span({{Z(1)}}, "odd"); }) == "not-even");
    Lattice odd{"odd", {{Z(1)}}};
    CHECK(thrown_kind([&] { check_even(odd); }) == "not-even");
    CHECK(lat_det(lat_rescale(lat_H(), 3)) == -9);
}

TEST_CASE("sum and rescale bookkeeping") {
    Lattice s = lat_sum({lat_H(), lat_E(8)});
    CHECK(s.rank() == 10);
    CHECK(lat_det(s) == -1);
    Signature sig = lat_signature(s);
    CHECK(sig.pos == 1);
    CHECK(sig.neg == 9);
    Lattice h2 = lat_rescale(lat_H(), 2);
    CHECK(lat_det(h2) == -4);
    CHECK(h2.gram[0][1] == 2);
}

TEST_CASE("discriminant form of A1") {
    // A1 = <-2>: group Z/2, generator e/2, q(e/2) = -1/2 = 3/2 mod 2Z.
    DiscGroup d = discriminant_group(lat_A(1));
    REQUIRE(d.invariants.size() == 1);
    CHECK(d.invariants[0] == 2);
    REQUIRE(d.q_values.size() == 1);
    CHECK(d.q_values[0] == Q(3, 2));
    CHECK(d.b_values[0][0] == Q(1, 2));
    CHECK(discriminant_group(lat_E(8)).invariants.empty());
}

TEST_CASE("discriminant form of D4 is integral") {
    DiscGroup d = discriminant_group(lat_D(4));
    REQUIRE(d.invariants.size() == 2);
    CHECK(d.invariants[0] == 2);
    CHECK(d.invariants[1] == 2);
    for (const Q& q : d.q_values) CHECK(q.get_den() == 1);
    TwoElementary t = two_elementary_invariants(lat_D(4));
    CHECK(t.rho == 4);
    CHECK(t.ell == 2);
    CHECK(t.delta == 0);
}

TEST_CASE("rescaled hyperbolic plane H(2)") {
    Lattice h2 = lat_rescale(lat_H(), 2);
    DiscGroup d = discriminant_group(h2);
    REQUIRE(d.invariants.size() == 2);
    CHECK(d.invariants[0] == 2);
    CHECK(d.invariants[1] == 2);
    TwoElementary t = two_elementary_invariants(h2);
    CHECK(t.rho == 2);
    CHECK(t.ell == 2);
    CHECK(t.delta == 0);  // q(e/2) = q(f/2) = 0, q((e+f)/2) = 1: all integral
}

TEST_CASE("two-elementary invariants of root sums") {
    TwoElementary a1 = two_elementary_invariants(lat_A(1));
    CHECK(a1.rho == 1);
    CHECK(a1.ell == 1);
    CHECK(a1.delta == 1);
    TwoElementary e7 = two_elementary_invariants(lat_E(7));
    CHECK(e7.ell == 1);
    CHECK(e7.delta == 1);
    TwoElementary e8 = two_elementary_invariants(lat_E(8));
    CHECK(e8.ell == 0);
    CHECK(e8.delta == 0);
    CHECK(thrown_kind([] { two_elementary_invariants(lat_A(2)); }) ==
          "not-2-elementary");
    CHECK(thrown_kind([] { two_elementary_invariants(lat_E(6)); }) ==
          "not-2-elementary");
}

TEST_CASE("index-2 overlattice by glue vector") {
    std::vector<Lattice> ones(8, lat_A(1));
    Lattice a18 = lat_sum(ones, "A1^8");
    std::vector<Q> w(8, Q(1, 2));
    Lattice over = overlattice_from_glue(a18, w);
    CHECK(over.rank() == 8);
    CHECK(abs(lat_det(over)) == 64);  // index 2 drops det by 4
    CHECK_NOTHROW(check_even(over));
    TwoElementary t = two_elementary_invariants(over);
    CHECK(t.rho == 8);
    CHECK(t.ell == 6);
    CHECK(t.delta == 0);
    // Canned copy agrees.
    CHECK(same_two_elementary_class(over, lat_overA18()));
    CHECK(abs(lat_det(lat_overA18())) == 64);

    // Rejections: w in L; q(w) odd.
    std::vector<Q> integral(8, Q(1));
    CHECK(thrown_kind([&] { overlattice_from_glue(a18, integral); }) ==
          "bad-argument");
    std::vector<Q> bad{Q(1, 2), Q(1, 2), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)};
    // q = -1/2 - 1/2 = -1, odd: result would not be even.
    CHECK(thrown_kind([&] { overlattice_from_glue(a18, bad); }) == "not-even");
    std::vector<Q> third(8, Q(1, 3));
    CHECK(thrown_kind([&] { overlattice_from_glue(a18, third); }) ==
          "bad-argument");
}

TEST_CASE("lattice from redundant generators") {
    // Three generators of H with a dependent third row.
    ZMat pairing{{Z(0), Z(1), Z(1)}, {Z(1), Z(0), Z(1)}, {Z(1), Z(1), Z(2)}};
    Lattice l = lattice_from_generators(pairing, "H-redundant");
    CHECK(l.rank() == 2);
    CHECK(lat_det(l) == -1);
    Signature s = lat_signature(l);
    CHECK(s.pos == 1);
    CHECK(s.neg == 1);
}

TEST_CASE("isometry class by invariants") {
    Lattice a = lat_sum({lat_H(), lat_D(4), lat_D(4), lat_A(1), lat_A(1)});
    Lattice b = lat_sum({lat_H(), lat_D(6), lat_A(1), lat_A(1), lat_A(1),
                         lat_A(1)});
    CHECK(same_two_elementary_class(a, b));  // both (12, 6, 1)
    Lattice c = lat_sum({lat_H(), lat_D(8), lat_D(4)});
    CHECK(!same_two_elementary_class(a, c));
    CHECK(same_two_elementary_class(lat_H(), lat_H()));
}

TEST_CASE("json round-trip") {
    Lattice l = lat_sum({lat_H(), lat_D(4)}, "probe");
    Lattice back = lat_from_json(lat_json(l));
    CHECK(back.name == l.name);
    CHECK(back.gram == l.gram);
    CHECK(thrown_kind([] { lat_from_json("{"); }) == "parse");
}

}  // TEST_SUITE
