#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/linalg.hpp"
#include "k3/scalar.hpp"

namespace k3 {

// Even integral lattice given by a Gram matrix in a fixed basis. Root
// lattices are taken negative definite (Gram = -Cartan).
struct Lattice {
    std::string name;
    ZMat gram;

    int rank() const { return static_cast<int>(gram.size()); }
};

// Constructors. All produce even lattices; "not-even" is raised when a
// rescale or sum would not (cannot happen for these generators).
Lattice lat_A(int n);                 // A_n, n >= 1
Lattice lat_D(int n);                 // D_n, n >= 4
Lattice lat_E(int n);                 // E_6, E_7, E_8
Lattice lat_H();                      // hyperbolic plane U
Lattice lat_rescale(const Lattice& l, int k, const std::string& name = "");
Lattice lat_span(const ZMat& gram, const std::string& name);  // direct Gram
Lattice lat_sum(const std::vector<Lattice>& parts, const std::string& name = "");

// Rank-8 even negative definite overlattice of A1^8: index-2 extension by
// the all-ones glue vector (e1 + ... + e8)/2.
Lattice lat_overA18();

void check_even(const Lattice& l);  // "not-even" with the offending entry

Z lat_det(const Lattice& l);
Signature lat_signature(const Lattice& l);

// Discriminant group L*/L with its finite quadratic form, from the Smith
// normal form of the Gram matrix.
struct DiscGroup {
    std::vector<Z> invariants;          // invariant factors > 1
    std::vector<std::vector<Q>> gens;   // generators, coordinates in L (x) Q
    std::vector<Q> q_values;            // q(gen) mod 2Z, in [0, 2)
    QMat b_values;                      // b(gen_i, gen_j) mod Z, in [0, 1)
};
DiscGroup discriminant_group(const Lattice& l);

// Invariants (rho, ell, delta) of a 2-elementary lattice: rank, minimal
// generator count of the discriminant group, and parity (delta = 0 iff the
// quadratic form takes only integer values). "not-2-elementary" names the
// offending invariant factor.
struct TwoElementary {
    int rho = 0, ell = 0, delta = 0;
};
TwoElementary two_elementary_invariants(const Lattice& l);

// Equality of isometry class for even hyperbolic (signature (1, n-1))
// 2-elementary lattices, decided by the (rho, ell, delta) triple.
bool same_two_elementary_class(const Lattice& a, const Lattice& b);

// Index-2 overlattice L + Z*w for a glue vector w given in the basis of L
// (so w has half-integral coordinates). Requires 2w in L, w not in L, and
// q(w) in 2Z so the result stays even.
Lattice overlattice_from_glue(const Lattice& l, const std::vector<Q>& w,
                              const std::string& name = "");

// Lattice spanned by generators with the given pairing matrix: quotient by
// the kernel of the Gram form. Result is honest (nondegenerate).
Lattice lattice_from_generators(const ZMat& pairing, const std::string& name);

std::string lat_json(const Lattice& l);
Lattice lat_from_json(const std::string& text);

}  // namespace k3
