#include <array>
#include <string>
#include <vector>

#include "doctest.h"
#include "k3/graph.hpp"

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

// Chain c1 - c2 - ... - cn (set chain=false for n disjoint curves).
DualGraph make_graph(int n, bool chain = true) {
    DualGraph g;
    g.lattice_name = "probe";
    for (int i = 1; i <= n; ++i) g.curves.push_back("c" + std::to_string(i));
    g.m.assign(n, std::vector<Z>(n, Z(0)));
    for (int i = 0; i < n; ++i) g.m[i][i] = -2;
    if (chain)
        for (int i = 0; i + 1 < n; ++i) g.m[i][i + 1] = g.m[i + 1][i] = 1;
    return g;
}

// Star: central node "z" with arms of the given lengths.
DualGraph make_star(const std::vector<int>& arm_lengths) {
    DualGraph g;
    g.lattice_name = "star";
    g.curves.push_back("z");
    std::vector<std::pair<int, int>> edges;  // index pairs
    int next = 1;
    for (std::size_t a = 0; a < arm_lengths.size(); ++a) {
        int prev = 0;
        for (int k = 0; k < arm_lengths[a]; ++k) {
            g.curves.push_back("a" + std::to_string(a) + "n" + std::to_string(k));
            edges.emplace_back(prev, next);
            prev = next++;
        }
    }
    int n = next;
    g.m.assign(n, std::vector<Z>(n, Z(0)));
    for (int i = 0; i < n; ++i) g.m[i][i] = -2;
    for (auto [i, j] : edges) g.m[i][j] = g.m[j][i] = 1;
    return g;
}

const char* kTinyCase = R"({
  "lattice": "toy",
  "curves": ["p", "q", "r"],
  "edges": [["p", "q", 1], ["q", "r", 2]],
  "d2": {"p": 1},
  "expect": [2, 2, 1]
})";

std::string data_path(const char* rel) {
    return std::string(K3_DATA_DIR) + "/" + rel;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("pairing on divisors") {
    DualGraph g = make_graph(3);
    Divisor a{{"c1", Z(1)}, {"c2", Z(2)}};
    Divisor b{{"c3", Z(1)}};
    CHECK(pair(g, a, b) == 2);            // only c2.c3 = 1 contributes
    CHECK(self_int(g, a) == -2 - 8 + 4);  // c1^2 + 4 c2^2 + 4 c1.c2
    CHECK(self_int(g, Divisor{}) == 0);
    CHECK(thrown_kind([&] { (void)pair(g, Divisor{{"zz", Z(1)}}, b); }) ==
          "unknown-curve");
}

TEST_CASE("nef screening against listed curves") {
    // Doubled edge (fiber-type pair): c1 + c2 pairs to zero with both.
    DualGraph g = make_graph(2, false);
    g.m[0][1] = g.m[1][0] = 2;
    Divisor d{{"c1", Z(1)}, {"c2", Z(1)}};
    CHECK(nef_against_listed(g, d).ok);
    Divisor bad{{"c1", Z(1)}};
    NefReport r = nef_against_listed(g, bad);
    CHECK(!r.ok);
    CHECK(r.witness == "c1");
    CHECK(nef_against_listed(g, Divisor{}).ok);
}

TEST_CASE("ADE chain recognition") {
    DualGraph a4 = make_graph(4);
    CHECK(chain_type(a4, a4.curves) == "A4");
    CHECK(chain_type(a4, {"c2"}) == "A1");
    CHECK(chain_type(a4, {"c1", "c2"}) == "A2");
    // Subset containment works on indices of the ambient graph.
    CHECK(chain_type(a4, {"c4", "c3", "c2"}) == "A3");

    CHECK(chain_type(make_star({1, 1, 2}), make_star({1, 1, 2}).curves) ==
          "D5");
    CHECK(chain_type(make_star({1, 1, 4}), make_star({1, 1, 4}).curves) ==
          "D7");
    CHECK(chain_type(make_star({1, 2, 2}), make_star({1, 2, 2}).curves) ==
          "E6");
    CHECK(chain_type(make_star({1, 2, 3}), make_star({1, 2, 3}).curves) ==
          "E7");
    CHECK(chain_type(make_star({1, 2, 4}), make_star({1, 2, 4}).curves) ==
          "E8");
    // A path through the star without the short arm is just a chain.
    DualGraph s = make_star({2, 2});
    CHECK(chain_type(s, s.curves) == "A5");
}

TEST_CASE("chain rejections") {
    DualGraph cyc = make_graph(4);
    cyc.m[0][3] = cyc.m[3][0] = 1;  // close the cycle
    CHECK(thrown_kind([&] { chain_type(cyc, cyc.curves); }) == "not-ade");

    DualGraph disc = make_graph(4);
    disc.m[1][2] = disc.m[2][1] = 0;  // disconnect the middle
    CHECK(thrown_kind([&] { chain_type(disc, disc.curves); }) == "not-ade");

    DualGraph dbl = make_graph(2);
    dbl.m[0][1] = dbl.m[1][0] = 2;  // multiple edge inside the chain
    CHECK(thrown_kind([&] { chain_type(dbl, dbl.curves); }) == "not-ade");

    // Arm profiles outside ADE.
    DualGraph t222 = make_star({2, 2, 2});
    CHECK(thrown_kind([&] { chain_type(t222, t222.curves); }) == "not-ade");
    DualGraph t115 = make_star({1, 2, 5});
    CHECK(thrown_kind([&] { chain_type(t115, t115.curves); }) == "not-ade");
    DualGraph v4 = make_star({1, 1, 1, 1});
    CHECK(thrown_kind([&] { chain_type(v4, v4.curves); }) == "not-ade");

    CHECK(thrown_kind([&] { chain_type(cyc, {}); }) == "not-ade");
}

TEST_CASE("polarization split bookkeeping") {
    // e.f = 3 makes (e + f)^2 = 2; b is an orthogonal (-2)-class.
    DualGraph g;
    g.lattice_name = "toy-split";
    g.curves = {"e", "f", "b"};
    g.m = {{Z(-2), Z(3), Z(0)}, {Z(3), Z(-2), Z(0)}, {Z(0), Z(0), Z(-2)}};
    Divisor d2{{"e", Z(1)}, {"f", Z(1)}};
    CHECK(self_int(g, d2) == 2);
    // H = D2 + b has H^2 = 0 and H.b = -2: both failures are reported.
    SplitCheck bad = check_polarization_split(g, d2, {"b"}, {Z(1)}, {});
    CHECK(!bad.ok);
    bool saw_h2 = false, saw_hb = false;
    for (const auto& f : bad.failures) {
        if (f.find("H^2") != std::string::npos) saw_h2 = true;
        if (f.find("H.b") != std::string::npos) saw_hb = true;
    }
    CHECK(saw_h2);
    CHECK(saw_hb);
    CHECK(thrown_kind([&] {
              check_polarization_split(g, d2, {"b"}, {Z(1), Z(2)}, {});
          }) == "bad-argument");
}

TEST_CASE("involution checking") {
    DualGraph g = make_graph(3);  // c1 - c2 - c3
    std::map<std::string, std::string> swap{{"c1", "c3"}, {"c3", "c1"}};
    Divisor sym{{"c1", Z(1)}, {"c2", Z(5)}, {"c3", Z(1)}};
    InvolutionCheck ok = check_involution(g, swap, sym);
    CHECK(ok.preserves_pairing);
    CHECK(ok.fixes_divisor);
    Divisor asym{{"c1", Z(1)}};
    CHECK(!check_involution(g, swap, asym).fixes_divisor);
    // Swapping adjacent nodes of the path breaks (c1.c3, c2.c3) = (0, 1).
    std::map<std::string, std::string> bad{{"c1", "c2"}, {"c2", "c1"}};
    CHECK(!check_involution(g, bad, sym).preserves_pairing);
    CHECK(thrown_kind([&] {
              check_involution(g, {{"c1", "zz"}}, sym);
          }) == "unknown-curve");
}

TEST_CASE("span lattice invariants") {
    // Two disjoint (-2)-curves: span A1 + A1 with invariants (2, 2, 1).
    DualGraph g = make_graph(2, false);
    NsCheck r = ns_check(g, TwoElementary{2, 2, 1});
    CHECK(r.matches);
    CHECK(r.lattice.rank() == 2);
    CHECK(!ns_check(g, TwoElementary{2, 2, 0}).matches);
    // Fiber-type pair has a radical: span drops to rank 1.
    DualGraph fib = make_graph(2, false);
    fib.m[0][1] = fib.m[1][0] = 2;
    NsCheck rf = ns_check(fib, TwoElementary{1, 1, 1});
    CHECK(rf.matches);
    CHECK(rf.lattice.rank() == 1);
    // A3 span is not 2-elementary (disc group Z/4).
    DualGraph a3 = make_graph(3);
    CHECK(thrown_kind([&] { ns_check(a3, TwoElementary{3, 1, 1}); }) ==
          "not-2-elementary");
}

TEST_CASE("graph case json defaults") {
    GraphCase c = graph_case_from_json(kTinyCase);
    CHECK(c.g.curves.size() == 3);
    CHECK(c.g.m[1][2] == 2);
    CHECK(c.d2.at("p") == 1);
    CHECK(c.b.empty());
    CHECK(c.a.empty());
    CHECK(!c.b_combined);
    CHECK(c.b_weights.empty());
    CHECK(c.involution.empty());
    CHECK(c.expect.rho == 2);
    CHECK(c.expect.ell == 2);
    CHECK(c.expect.delta == 1);
    CHECK(thrown_kind([] { graph_case_from_json("[]"); }) == "parse");
    CHECK(thrown_kind([] { graph_case_from_json("{nope"); }) == "parse");
    CHECK(thrown_kind([] {
              graph_from_json(R"({"lattice": "x", "curves": ["a"],
                                  "edges": [["a", "zz", 1]]})");
          }) == "unknown-curve");
    CHECK(thrown_kind([] {
              graph_from_json(R"({"lattice": "x", "curves": ["a", "b"],
                                  "edges": [["a", "b"], ["b", "a", 2]]})");
          }) == "parse");  // duplicate edge
}

TEST_CASE("bundled data files load and certify") {
    GraphCase ten = load_graph_case(data_path("graphs/pic10.json"));
    CHECK(ten.g.curves.size() == 18);
    CHECK(self_int(ten.g, ten.d2) == 2);
    CHECK(ns_check(ten.g, ten.expect).matches);

    GraphCase eleven = load_graph_case(data_path("graphs/pic11.json"));
    CHECK(eleven.b_combined);
    SplitCheck s = check_polarization_split(eleven.g, eleven.d2, eleven.b,
                                            eleven.b_weights, eleven.a,
                                            eleven.b_combined);
    CHECK(s.ok);

    GraphCase fourteen = load_graph_case(data_path("graphs/pic14.json"));
    REQUIRE(!fourteen.involution.empty());
    InvolutionCheck ic =
        check_involution(fourteen.g, fourteen.involution, fourteen.d2);
    CHECK(ic.preserves_pairing);
    CHECK(ic.fixes_divisor);
}

}  // TEST_SUITE
