#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/scalar.hpp"

namespace k3 {

using VarId = int;

// Global variable registry. Ids are assigned in registration order; the
// geometry variables are pre-seeded so term order does not depend on which
// module touches the registry first.
VarId var_id(const std::string& name);
const std::string& var_name(VarId v);
bool var_exists(const std::string& name);

// Exponent vector, indexed by VarId, trailing zeros trimmed.
// Exponents are capped at 64 per variable (degree-cap error beyond).
struct Mono {
    std::vector<std::uint16_t> e;

    static constexpr unsigned kMaxExp = 64;

    int total() const;
    int deg_in(VarId v) const;
    bool divides(const Mono& m) const;
    Mono times(const Mono& m) const;
    Mono quotient_by(const Mono& m) const;  // pre: m.divides(*this)
    Mono without(VarId v) const;
    bool operator==(const Mono& m) const { return e == m.e; }
};

// Graded lexicographic, highest first, so map::begin() is the leading term.
struct MonoOrderDesc {
    bool operator()(const Mono& a, const Mono& b) const;
};

class Poly {
public:
    using Terms = std::map<Mono, Q, MonoOrderDesc>;

    Poly() = default;
    Poly(long c) : Poly(Q(c)) {}
    Poly(const Q& c);
    static Poly variable(const std::string& name, unsigned exp = 1);
    static Poly variable(VarId v, unsigned exp = 1);
    static Poly term(const Q& c, const Mono& m);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Q constant_value() const;  // pre: is_constant()
    const Terms& terms() const { return t_; }
    std::size_t term_count() const { return t_.size(); }

    int degree() const;               // total degree, -1 for zero
    int degree_in(VarId v) const;     // -1 for zero
    std::vector<VarId> vars() const;  // variables that actually occur
    bool uses(VarId v) const;

    const Mono& leading_mono() const;  // pre: !is_zero()
    const Q& leading_coeff() const;    // pre: !is_zero()
    Q coeff(const Mono& m) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Q& c);
    friend Poly operator*(Poly a, const Q& c) { return a *= c; }
    friend Poly operator*(const Q& c, Poly a) { return a *= c; }
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    void add_term(const Q& c, const Mono& m);  // fuses, drops zeros

private:
    Terms t_;
};

Poly pow(const Poly& p, unsigned e);

// Coefficient of v^k, as a polynomial in the remaining variables.
Poly coeff_in(const Poly& p, VarId v, int k);

// All coefficients wrt v, index = exponent, size degree_in+1 (empty for 0).
std::vector<Poly> coeffs_in(const Poly& p, VarId v);

Poly derivative(const Poly& p, VarId v);

// Substitution of polynomials for variables. Variables of p absent from the
// map are kept as themselves.
Poly subst(const Poly& p, const std::map<VarId, Poly>& m);

// Full evaluation; errors ("unmapped-variable") if p uses a variable the
// point does not bind.
Q eval(const Poly& p, const std::map<VarId, Q>& point);

// Weighted homogeneity. Unlisted variables get weight 1. Returns the degree,
// or nullopt if inhomogeneous (zero counts as homogeneous of degree -1).
std::optional<int> homogeneous_degree(const Poly& p,
                                      const std::map<VarId, int>& weights = {});

// Exact division: returns q with p == q*d, or nullopt when d does not divide
// p. Errors on d == 0.
std::optional<Poly> divide_exact(const Poly& p, const Poly& d);

// Pseudo-division wrt one variable: lc_v(d)^k * p == q*d + r with
// deg_v(r) < deg_v(d) and k = max(deg_v(p) - deg_v(d) + 1, 0).
struct PseudoDiv {
    Poly quot, rem;
    unsigned lc_power;
};
PseudoDiv pseudo_divide(const Poly& p, const Poly& d, VarId v);

// Resultant wrt one variable (Sylvester determinant, Bareiss elimination).
Poly resultant(const Poly& p, const Poly& q, VarId v);

// Discriminant wrt v: (-1)^(n(n-1)/2) * Res_v(p, dp/dv) / lc_v(p), n = deg_v.
Poly discriminant(const Poly& p, VarId v);

// Rewrites even powers of y via y^2 -> F. F must not involve y
// ("malformed-cover"). Ring homomorphism on the quotient by (y^2 - F).
Poly reduce_double_cover(const Poly& p, VarId y, const Poly& F);

// Quotient of two polynomials, kept with deterministic normalization: the
// common monomial factor and rational content are stripped and the
// denominator's leading coefficient is made positive. No full gcd reduction
// is attempted in several variables.
struct RationalFn {
    Poly num, den;

    RationalFn() : num(0), den(1) {}
    RationalFn(Poly n, Poly d);  // canonicalizes, errors on d == 0
    explicit RationalFn(Poly n) : RationalFn(std::move(n), Poly(1)) {}

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.is_constant(); }

    RationalFn operator-() const;
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    bool equals(const RationalFn& o) const;  // cross-multiplied
};

RationalFn pow(const RationalFn& f, unsigned e);

// Map sending each bound variable to a rational function of other variables.
struct RationalMap {
    std::map<VarId, RationalFn> comp;
};

// Substitutes m into p and clears denominators. Every variable of p must be
// bound ("unmapped-variable" otherwise).
RationalFn substitute(const Poly& p, const RationalMap& m);

// Defining relation C*y^2 - F of a double cover (C == 1 for plain covers).
struct CoverRule {
    VarId y;
    Poly C, F;
};

// Remainder of p after pseudo-reduction by the cover relation: zero iff
// C^k * p lies in the ideal (C*y^2 - F), i.e. p vanishes on the cover away
// from C = 0.
Poly cover_residual(const Poly& p, const CoverRule& rule);

// Text format: sum of terms "coef*u^a*v^b", rationals as "p/q". Parser
// accepts any term order and optional whitespace; printer is deterministic
// (graded-lex descending).
std::string to_string(const Poly& p);
Poly parse_poly(const std::string& text);
std::string to_string(const RationalFn& f);

}  // namespace k3
