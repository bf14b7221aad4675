#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/poly.hpp"
#include "k3/rng.hpp"
#include "k3/univar.hpp"

namespace k3 {

// Elliptic surface y^2 z = x^3 + A x^2 z + B x z^2 + C z^3 over P^1 with
// coordinates (u, v); A, B, C homogeneous of degrees (4, 8, 12) for a K3
// model (weight 2) or (2, 4, 6) for a rational elliptic one (weight 1).
struct WeierstrassModel {
    Poly A, B, C;

    int weight() const;  // 1 or 2; validates homogeneity ("bad-model")
};

Poly c4(const WeierstrassModel& m);
Poly c6(const WeierstrassModel& m);
Poly disc(const WeierstrassModel& m);

// Kodaira fiber symbol: "I0".."In", "I0*".."In*", "II", "III", "IV",
// "II*", "III*", "IV*".
struct PlaceFiber {
    std::string place;   // monic factor of the discriminant, or "inf"
    int place_degree;    // degree of the place over the base field
    std::string kodaira;
    int euler;           // Euler number of the fiber
    int root_rank;       // rank of the root lattice attached to the fiber
    std::string root;    // "An"/"Dn"/"En" symbol or "-"
};

struct FiberConfiguration {
    std::vector<PlaceFiber> places;  // only singular fibers
    int euler_total = 0;
    std::map<std::string, int> counts;  // kodaira symbol -> count (by degree)
    bool two_torsion = false;           // (0,0) section: C == 0

    std::string summary() const;  // e.g. "8I2 + 8I1"
};

// Exact Tate classification over every place of bad reduction. Errors
// ("non-reduced") when the discriminant vanishes identically.
FiberConfiguration fiber_configuration(const WeierstrassModel& m);

// Quotient by the 2-torsion section (0, 0); requires C == 0.
WeierstrassModel two_isogeny(const WeierstrassModel& m);

// j-invariant as a rational function c4^3 / Delta (up to the 1728 scale
// convention; comparisons are cross-multiplied so the scale cancels).
bool same_j(const WeierstrassModel& a, const WeierstrassModel& b);

// Certifies that two models become isomorphic over the closure of the
// function field: equal j and Delta-ratio a 6th power up to a constant.
struct ClosureIso {
    bool same_j = false;
    bool twist_shape = false;  // Delta ratio = const * f^6
    Q scalar;                  // the constant, when twist_shape holds
};
ClosureIso certify_closure_iso(const WeierstrassModel& a, const WeierstrassModel& b);

// Genus-one quartic over the t-line: Y^2 = q(S; t), q of degree 4 in S with
// UPoly coefficients in t, plus a marked rational point (root of q given as
// (s_num, s_den) or the point at S = infinity when the quartic drops degree).
struct GenusOneModel {
    std::vector<UPoly> q;  // q[i] = coefficient of S^i, i = 0..4
    // Marked root S = root_num / root_den (binary: (root_den : root_num)).
    UPoly root_num, root_den;
    bool root_at_infinity = false;
};

// Jacobian via the classical binary-quartic invariants I and J:
// Y^2 = X^3 - 27 I X - 27 J, made minimal at every place (finite and
// infinite) and homogenized to degrees (8, 12) over (u, v). Errors
// ("bad-model") when the minimal model does not fit weight 2.
WeierstrassModel quartic_jacobian(const GenusOneModel& g);

// Pencil t*l1 + l2 of lines through a base point on the conic C (conic and
// quartic in u, v, w; l1, l2 linear forms vanishing at the point).
// Restricting the double cover branched on C*Q to the pencil and removing
// the base point contribution yields a genus-one quartic over the pencil
// parameter; the residual intersection with the conic marks a point.
GenusOneModel pencil_fibration(const Poly& conic, const Poly& quartic,
                               const std::vector<Q>& base_point,
                               const Poly& l1, const Poly& l2);

// Mordell-Weil rank from the Shioda-Tate formula: rho - 2 - sum of fiber
// root ranks.
int mw_rank(const FiberConfiguration& f, int rho);

// Random homogeneous form of the given degree in (u, v), divisible by
// v^v_min, with nonzero ends (coefficients of u^deg and the lowest allowed
// v-power) so vanishing orders are exact.
Poly random_form(Rng& rng, int deg, long height, int v_min = 0);

// Forced vanishing orders at v = 0 of the parameters (c2, e3, d4) per rank;
// rank 11 carries the extra unit h0. `variant` distinguishes the two
// rank-14 cases: 0 -> (4, 0), 1 -> (4, 1).
std::array<int, 3> quartic_orders(int rho, int variant);

// Forced vanishing-order instance of the 2-torsion family
// y^2 = x (x^2 + a4 x + b8) over (u, v) for a prescribed Picard number.
// Resamples until the fiber configuration matches the expected one
// ("search-failure" past max_tries).
struct FrameInstance {
    WeierstrassModel model;
    // Family parameters (b8 = a4^2/4 - v^2 b6''), zero when not applicable.
    Poly a4, b8, b6pp;
    Poly c2, e3, d4, d4p;  // quartic double-cover data
    Q h0;
    std::string expected;  // e.g. "I2* + 5I2 + 6I1"
};
FrameInstance forced_frame_instance(int rho, int variant, Rng& rng, int max_tries = 32);

// Expected root type string ("8A1", "D6 + 5A1", ...) per rank, matching the
// frame table; variant as above.
std::string frame_root_type(int rho, int variant);
std::string frame_expected_fibers(int rho, int variant);

// Root lattice symbols attached to a configuration, as multiset counts.
std::map<std::string, int> root_counts(const FiberConfiguration& f);

// JSON io for Weierstrass models: {"A": "...", "B": "...", "C": "..."}
// with polynomials in the text format.
WeierstrassModel model_from_json(const std::string& text);
std::string model_json(const WeierstrassModel& m);

}  // namespace k3
