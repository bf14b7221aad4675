#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/lattice.hpp"
#include "k3/linalg.hpp"

namespace k3 {

// Dual graph of a configuration of (-2)-curves: nodes are curve classes,
// edge weights are intersection numbers. The intersection matrix has -2 on
// the diagonal and the edge weight (default 1) off-diagonal.
struct DualGraph {
    std::string lattice_name;
    std::vector<std::string> curves;
    ZMat m;  // intersection matrix, curves order
    std::string notes;

    int index_of(const std::string& curve) const;  // "unknown-curve" if absent
};

// JSON schema: {"lattice": str, "curves": [str], "edges": [[a, b, mult]],
// "notes": str}. Errors carry the offending entry.
DualGraph graph_from_json(const std::string& text);
DualGraph load_graph(const std::string& path);

// Formal divisor on the graph: integer combination of curves.
using Divisor = std::map<std::string, Z>;

Z pair(const DualGraph& g, const Divisor& a, const Divisor& b);
Z self_int(const DualGraph& g, const Divisor& a);

// D . C >= 0 against every listed curve (necessary condition; the graphs
// list every curve that matters for the checked divisors).
struct NefReport {
    bool ok = true;
    std::string witness;  // first failing curve when !ok
};
NefReport nef_against_listed(const DualGraph& g, const Divisor& d);

// Checks the standard degree-4 splitting H = D2 + sum w_j b_j:
// H^2 = 4, D2^2 = 2, H.b_j = 0, H.a_i = 0, (H - sum a_i)^2 = 2.
// With b_combined the weighted b-entries form a single contracted class
// (the listed generators need not be orthogonal to H one by one), so the
// orthogonality check is H.(sum w_j b_j) = 0 instead of per curve.
struct SplitCheck {
    bool ok = true;
    std::vector<std::string> failures;
};
SplitCheck check_polarization_split(const DualGraph& g, const Divisor& d2,
                                    const std::vector<std::string>& b,
                                    const std::vector<Z>& b_weights,
                                    const std::vector<std::string>& a,
                                    bool b_combined = false);

// ADE type of the subgraph induced on the given curves. Requires simple
// edges and a connected tree of paths/forks; otherwise "not-ade" with a
// reason.
std::string chain_type(const DualGraph& g, const std::vector<std::string>& curves);

// Lattice generated by the curve classes (quotient by the radical), with
// its 2-elementary invariants compared against expectations.
struct NsCheck {
    TwoElementary got;
    bool matches = false;
    Lattice lattice;
};
NsCheck ns_check(const DualGraph& g, const TwoElementary& expected);

// Involution given as a permutation of curves; must preserve the
// intersection matrix and fix the divisor.
struct InvolutionCheck {
    bool preserves_pairing = false;
    bool fixes_divisor = false;
};
InvolutionCheck check_involution(const DualGraph& g,
                                 const std::map<std::string, std::string>& perm,
                                 const Divisor& d);

// A graph bundled with its check data: the degree-4 splitting H = D2 +
// sum w_j b_j, the two curve chains, the expected lattice invariants, and
// an optional symmetry. Extra JSON keys: "d2" (curve -> weight), "b",
// "b_weights", "b_combined" (bool), "a", "a_type", "b_type", "expect"
// ([rho, ell, delta]), "involution" (curve -> curve).
struct GraphCase {
    DualGraph g;
    Divisor d2;
    std::vector<std::string> b, a;
    std::vector<Z> b_weights;
    bool b_combined = false;
    std::string a_type, b_type;  // empty = no chain comparison for that list
    TwoElementary expect;
    std::map<std::string, std::string> involution;  // empty = none
};
GraphCase graph_case_from_json(const std::string& text);
GraphCase load_graph_case(const std::string& path);

}  // namespace k3
