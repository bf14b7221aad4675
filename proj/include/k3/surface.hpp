#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "k3/fibration.hpp"
#include "k3/linalg.hpp"
#include "k3/poly.hpp"
#include "k3/rng.hpp"

namespace k3 {

// ---- double-plane models over P^2(u, v, w) ----

// Sextic double plane y^2 = w (c3 w^2 + a4 w + d5): the branch splits off
// the line w = 0. Coefficients homogeneous in (u, v) of the named degrees;
// the associated 2-torsion fibration has b8 = c3 * d5.
struct LineQuinticModel {
    Poly c3, a4, d5;

    Poly b8() const;      // c3 * d5
    Poly sextic() const;  // w (c3 w^2 + a4 w + d5)
};
LineQuinticModel random_line_quintic(Rng& rng, long height);

// Quartic family K and its double-plane companions for ranks 10..18:
//   rank 10:    (w^2 - uv) y^2 = c2 w^2 + e3 w + d4
//   rank >= 11: w (v + h0 w) y^2 = c2 w^2 + e3 w + d4   (h0 != 0 only at 11)
// with c2, e3, d4 homogeneous in (u, v) of degrees 2, 3, 4.
struct QuarticData {
    int rho = 0;
    int variant = 0;  // rank-14 split: 0 -> (4,0), 1 -> (4,1)
    Q h0;
    Poly c2, e3, d4;
};
QuarticData random_quartic_data(int rho, int variant, Rng& rng, long height,
                                int max_tries = 32);

Poly qd_a4(const QuarticData& d);    // v e3 - 2 h0 d4; rank 10: u v c2 - d4
Poly qd_b6pp(const QuarticData& d);  // e3^2/4 - c2 d4
Poly qd_d4p(const QuarticData& d);   // c2 v^2 - h0 e3 v + h0^2 d4
Poly qd_b8(const QuarticData& d);    // a4^2/4 - v^2 b6'' = d4 * d4p (rank >= 11)
Poly qd_quartic(const QuarticData& d);  // defining quartic of K in (u, v, w, y)
Poly qd_sextic(const QuarticData& d);   // y^2 = v^2 w^4 - a4 w^2 + b6''
                                        // (u v w^4 at rank 10)
// 2-torsion model y^2 = x (x^2 + a4 x + b8); rank >= 11 only.
WeierstrassModel qd_weierstrass(const QuarticData& d);

// ---- birational map catalog ----

// Each entry pulls a target equation back along a printed map and reduces by
// the source cover relation; the residual must vanish identically. Sampled
// on `trials` random instances per entry.
struct MapCheck {
    std::string id;
    bool ok = true;
    std::string detail;
};
std::vector<MapCheck> run_map_catalog(std::uint64_t seed, int trials,
                                      long height = 6);

// ---- degree-one del Pezzo model from eight plane nodes ----

struct DelPezzo {
    QMat pts;         // 8 x 3, rows are plane points (X : Y : Z)
    Poly U, V, W, R;  // cubic pencil, nodal sextic, triple nonic in (X, Y, Z)
    Q c0;             // scale of W^3
    Poly c2, c4, c6;  // in (u, v), degrees 2, 4, 6
};

// Dimensions of the linear systems: cubics through the points, sextics
// singular there, nonics with triple points there. (2, 4, 7) when general.
std::array<std::size_t, 3> nodal_system_dims(const QMat& pts);

QMat random_octet(Rng& rng, long height);

// Builds the anticanonical model from general points; "genericity" when a
// dimension or the final linear solve degenerates (caller retries).
DelPezzo del_pezzo_from_points(const QMat& pts);

// R^2 - (c0 W^3 + c2(U,V) W^2 + c4(U,V) W + c6(U,V)); identically zero when
// the model is consistent.
Poly del_pezzo_residual(const DelPezzo& dp);

// Weight-1 model y^2 = x^3 + c2 x^2 + (c0 c4) x + c0^2 c6 of the fibration
// induced by the cubic pencil.
WeierstrassModel coefficient_model(const Q& c0, const Poly& c2, const Poly& c4,
                                   const Poly& c6);

// Branch sextic c0 w^6 + c2 w^4 + c4 w^2 + c6 in (u, v, w).
Poly branch_sextic(const Q& c0, const Poly& c2, const Poly& c4, const Poly& c6);

// Certifies a plane projective curve smooth by resultant elimination on its
// gradient: true = certified smooth, false = not certifiable (a singular
// point may exist). "inconclusive" when the elimination degenerates.
bool certify_plane_curve_smooth(const Poly& f);

// W -> f0 W + f2 acts on the coefficient vector by the printed rules; tests
// pin the rules against direct substitution.
struct WeightedShift {
    Q f0;
    Poly f2;  // homogeneous of degree 2 in (u, v)
};
void apply_weighted_shift(Q& c0, Poly& c2, Poly& c4, Poly& c6,
                          const WeightedShift& s);

// ---- sections and tangent conics ----

// Witness (p2, q3) for a section x = p2, y = q3 of the weight-1 model;
// equivalently the conic w^2 = p2 meets the branch sextic with even contact
// everywhere: the restriction c0 p2^3 + c2 p2^2 + c4 p2 + c6 equals q3^2.
struct ConicWitness {
    Poly p2, q3;  // degrees 2 and 3 in (u, v)
};

bool check_conic_witness(const Q& c0, const Poly& c2, const Poly& c4,
                         const Poly& c6, const ConicWitness& w);

struct ConicInstance {
    Q c0;
    Poly c2, c4, c6;
    ConicWitness wit;
};
// Samples (c0, c2, c4, p2, q3) and solves for c6, so the witness holds by
// construction.
ConicInstance random_conic_instance(Rng& rng, long height);

}  // namespace k3
