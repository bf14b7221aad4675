#pragma once

#include <utility>
#include <vector>

#include "k3/poly.hpp"
#include "k3/scalar.hpp"

namespace k3 {

// Dense univariate polynomial over Q; c(i) is the coefficient of t^i.
class UPoly {
public:
    UPoly() = default;
    UPoly(long c) : UPoly(Q(c)) {}
    explicit UPoly(const Q& c);
    explicit UPoly(std::vector<Q> coeffs);

    static UPoly t(unsigned e = 1);

    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Q coeff(int i) const;
    const Q& lc() const;  // pre: !is_zero()
    const std::vector<Q>& coeffs() const { return c_; }

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    UPoly& operator*=(const Q& s);
    friend UPoly operator*(UPoly a, const Q& s) { return a *= s; }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    Q eval(const Q& x) const;

private:
    void normalize();
    std::vector<Q> c_;
};

UPoly pow(const UPoly& p, unsigned e);

// Field division: a == q*b + r with deg r < deg b. Errors on b == 0.
std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);

// Exact division; errors ("not-divisible") when the remainder is nonzero.
UPoly div_exact(const UPoly& a, const UPoly& b);

UPoly derivative(const UPoly& p);
UPoly monic(const UPoly& p);  // pre: p != 0
UPoly gcd(const UPoly& a, const UPoly& b);  // monic (or 0 if both 0)

UPoly compose(const UPoly& p, const UPoly& q);  // p(q(t))

// t^d * p(1/t); requires d >= deg p.
UPoly reverse(const UPoly& p, int d);

// Largest k with d^k | p. Errors if d is constant or p == 0.
int valuation(const UPoly& p, const UPoly& d);

// p / gcd(p, p'), monic. The product of the distinct roots' linear factors.
UPoly squarefree_part(const UPoly& p);

// Yun decomposition: returns s with p = lc * prod s[i]^(i+1), each s[i]
// monic squarefree, pairwise coprime (possibly constant 1).
std::vector<UPoly> yun(const UPoly& p);

// Pairwise-coprime squarefree basis for a family of nonzero polynomials,
// with exponent matrix and scalar units: input[i] = unit[i] * prod
// basis[j]^exp[i][j]. Basis is sorted deterministically.
struct GcdFreeBasis {
    std::vector<UPoly> basis;
    std::vector<std::vector<int>> exp;
    std::vector<Q> unit;
};
GcdFreeBasis gcd_free_basis(const std::vector<UPoly>& inputs);

UPoly resultant(const UPoly& a, const UPoly& b);

// Discriminant for degrees 2, 3, 4 ("unsupported-degree" otherwise).
Q discriminant(const UPoly& p);

// Conversions to/from the multivariate ring.
UPoly to_upoly(const Poly& p, VarId v);  // p must use only v
Poly to_poly(const UPoly& p, VarId v);

// Binary form f(u, v), homogeneous of degree d, stored dehomogenized:
// phi(t) = f(1, t). The place u = 0 has multiplicity d - deg phi.
struct BForm {
    int deg = 0;
    UPoly phi;
};
BForm to_bform(const Poly& f, VarId u, VarId v);
Poly from_bform(const BForm& f, VarId u, VarId v);

std::string to_string(const UPoly& p);

}  // namespace k3
