#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "k3/poly.hpp"
#include "k3/rng.hpp"

namespace k3 {

// Local type of a hypersurface point: not on the surface, a smooth point,
// or a rational double point A_k / D_k / E_k.
struct LocalType {
    enum Kind { kOff, kSmooth, kA, kD, kE };

    Kind kind = kOff;
    int index = 0;

    std::string str() const;  // "off", "smooth", "A3", "D6", "E8"
    bool operator==(const LocalType&) const = default;
};
LocalType parse_local_type(const std::string& s);

// Germ of g at a point: the three coordinates are shifted to the origin.
// g must use no other variables ("bad-argument").
Poly germ_at(const Poly& g, const std::array<VarId, 3>& vars,
             const std::array<Q, 3>& point);

// Classifies the germ of g at the origin in the given variables, exactly
// over Q: Hessian corank, implicit elimination of the nondegenerate block,
// then order / cubic-factor recognition. `cap` bounds every jet. Throws
// "inconclusive" when the cap is insufficient or a branch vanishes to cap,
// and "not-rdp" when the singularity is not a double point.
LocalType classify_germ(const Poly& g, const std::array<VarId, 3>& vars,
                        int cap = 20);

// Expected local types at the three marked points (the double-plane S at p,
// the quartic K at its two distinguished points), one row per family member.
// Empty entries mean the model or the point does not exist in that row.
struct LocalTypeRow {
    std::string label;  // "9 (9,1)", "14 (4,0)", ...
    std::string s_at_p, k_at_p1, k_at_p2;
};
const std::vector<LocalTypeRow>& expected_local_types();

// Same shape, with the types computed from a random member of the family;
// retries fresh samples on "inconclusive" up to max_tries.
LocalTypeRow sampled_local_types(std::size_t row, std::uint64_t seed,
                                 int cap = 20, int max_tries = 8);

}  // namespace k3
