#include "k3/univar.hpp"

#include <algorithm>

namespace k3 {

UPoly::UPoly(const Q& c) {
    if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { normalize(); }

UPoly UPoly::t(unsigned e) {
    std::vector<Q> c(e + 1, Q(0));
    c[e] = 1;
    return UPoly(std::move(c));
}

void UPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Q UPoly::coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Q(0);
}

const Q& UPoly::lc() const {
    if (c_.empty()) throw ToolError("bad-argument", "leading coeff of zero");
    return c_.back();
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Q> c(std::max(a.c_.size(), b.c_.size()), Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Q> c(std::max(a.c_.size(), b.c_.size()), Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Q> c(a.c_.size() + b.c_.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

UPoly& UPoly::operator*=(const Q& s) {
    if (s == 0) {
        c_.clear();
    } else {
        for (auto& x : c_) x *= s;
    }
    return *this;
}

Q UPoly::eval(const Q& x) const {
    Q r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UPoly pow(const UPoly& p, unsigned e) {
    UPoly r(1), b = p;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw ToolError("division-by-zero", "univariate division by zero");
    UPoly q, r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        Q c = r.lc() / b.lc();
        UPoly t = UPoly::t(k) * c;
        q += t;
        r -= t * b;
    }
    return {q, r};
}

UPoly div_exact(const UPoly& a, const UPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw ToolError("not-divisible", "univariate exact division failed");
    return q;
}

UPoly derivative(const UPoly& p) {
    if (p.deg() < 1) return UPoly();
    std::vector<Q> c(p.deg());
    for (int i = 1; i <= p.deg(); ++i) c[i - 1] = p.coeff(i) * i;
    return UPoly(std::move(c));
}

UPoly monic(const UPoly& p) {
    UPoly r = p;
    r *= 1 / p.lc();
    return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divrem(x, y).second;
        x = y;
        y = r.is_zero() ? r : monic(r);  // keeps coefficient growth in check
    }
    return x.is_zero() ? x : monic(x);
}

UPoly compose(const UPoly& p, const UPoly& q) {
    UPoly r;
    for (int i = p.deg(); i >= 0; --i) r = r * q + UPoly(p.coeff(i));
    return r;
}

UPoly reverse(const UPoly& p, int d) {
    if (d < p.deg()) throw ToolError("bad-argument", "reverse: d below degree");
    std::vector<Q> c(d + 1, Q(0));
    for (int i = 0; i <= p.deg(); ++i) c[d - i] = p.coeff(i);
    return UPoly(std::move(c));
}

int valuation(const UPoly& p, const UPoly& d) {
    if (p.is_zero() || d.is_constant())
        throw ToolError("bad-argument", "valuation needs nonzero p, nonconstant d");
    int k = 0;
    UPoly r = p;
    while (true) {
        auto [q, rem] = divrem(r, d);
        if (!rem.is_zero()) return k;
        r = q;
        ++k;
    }
}

UPoly squarefree_part(const UPoly& p) {
    if (p.is_zero()) throw ToolError("bad-argument", "squarefree part of zero");
    if (p.is_constant()) return UPoly(1);
    UPoly g = gcd(p, derivative(p));
    return monic(div_exact(p, g));
}

std::vector<UPoly> yun(const UPoly& p) {
    if (p.is_zero()) throw ToolError("bad-argument", "Yun of zero");
    std::vector<UPoly> out;
    if (p.is_constant()) return out;
    UPoly f = monic(p);
    UPoly g = gcd(f, derivative(f));
    UPoly c = div_exact(f, g);
    UPoly d = div_exact(derivative(f), g) - derivative(c);
    while (!c.is_constant()) {
        UPoly s = gcd(c, d);
        out.push_back(s);
        c = div_exact(c, s);
        d = div_exact(d, s) - derivative(c);
    }
    return out;
}

GcdFreeBasis gcd_free_basis(const std::vector<UPoly>& inputs) {
    for (const auto& p : inputs)
        if (p.is_zero())
            throw ToolError("bad-argument", "gcd-free basis of zero polynomial");

    // Collect squarefree parts, then refine until pairwise coprime.
    std::vector<UPoly> basis;
    auto insert = [&](UPoly f) {
        std::vector<UPoly> todo{std::move(f)};
        while (!todo.empty()) {
            UPoly cur = std::move(todo.back());
            todo.pop_back();
            if (cur.is_constant()) continue;
            bool split = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                UPoly g = gcd(cur, basis[i]);
                if (g.is_constant()) continue;
                UPoly rest_b = div_exact(basis[i], g);
                UPoly rest_c = div_exact(cur, g);
                basis.erase(basis.begin() + i);
                todo.push_back(monic(g));
                if (!rest_b.is_constant()) todo.push_back(monic(rest_b));
                if (!rest_c.is_constant()) todo.push_back(monic(rest_c));
                split = true;
                break;
            }
            if (!split) {
                bool dup = false;
                for (const auto& b : basis)
                    if (b == cur) dup = true;
                if (!dup) basis.push_back(std::move(cur));
            }
        }
    };
    // Refine with each multiplicity layer separately: the total squarefree
    // part is too coarse when one input carries a factor in two different
    // multiplicities ((t-1)^2(t+1) is not a power of (t-1)(t+1)).
    for (const auto& p : inputs)
        if (!p.is_constant())
            for (const auto& f : yun(p)) insert(f);

    std::sort(basis.begin(), basis.end(), [](const UPoly& a, const UPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        for (int i = a.deg(); i >= 0; --i) {
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        }
        return false;
    });

    GcdFreeBasis out;
    out.basis = std::move(basis);
    for (const auto& p : inputs) {
        std::vector<int> row;
        UPoly r = p;
        for (const auto& b : out.basis) {
            int k = r.is_constant() ? 0 : valuation(r, b);
            row.push_back(k);
            for (int i = 0; i < k; ++i) r = div_exact(r, b);
        }
        if (!r.is_constant())
            throw ToolError("internal", "gcd-free basis does not exhaust input");
        out.exp.push_back(std::move(row));
        out.unit.push_back(r.coeff(0));
    }
    return out;
}

namespace {

// Determinant over Q by fraction Gaussian elimination.
Q det_q(std::vector<std::vector<Q>>& m) {
    std::size_t n = m.size();
    Q det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return Q(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        Q inv = 1 / m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Q f = m[i][k] * inv;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

}  // namespace

UPoly resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    int da = a.deg(), db = b.deg();
    if (da == 0 && db == 0) return UPoly(1);
    if (da == 0) return UPoly(q_pow(a.coeff(0), db));
    if (db == 0) return UPoly(q_pow(b.coeff(0), da));
    std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<Q>> syl(n, std::vector<Q>(n, Q(0)));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) syl[i][i + j] = a.coeff(da - j);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) syl[db + i][i + j] = b.coeff(db - j);
    return UPoly(det_q(syl));
}

Q discriminant(const UPoly& p) {
    int n = p.deg();
    if (n < 2 || n > 4)
        throw ToolError("unsupported-degree",
                        "discriminant implemented for degrees 2..4, got " +
                            std::to_string(n));
    UPoly res = resultant(p, derivative(p));
    Q d = res.coeff(0) / p.lc();
    if ((n * (n - 1) / 2) % 2) d = -d;
    return d;
}

UPoly to_upoly(const Poly& p, VarId v) {
    UPoly r;
    for (const auto& [m, c] : p.terms()) {
        int k = m.deg_in(v);
        if (m.total() != k)
            throw ToolError("bad-argument",
                            "polynomial is not univariate in " + var_name(v));
        r += UPoly::t(k) * c;
    }
    return r;
}

Poly to_poly(const UPoly& p, VarId v) {
    Poly r;
    for (int i = 0; i <= p.deg(); ++i)
        if (p.coeff(i) != 0) r += Poly::variable(v, i) * p.coeff(i);
    return r;
}

BForm to_bform(const Poly& f, VarId u, VarId v) {
    auto d = homogeneous_degree(f);
    if (!d || *d < 0)
        throw ToolError("bad-argument", "binary form must be homogeneous and nonzero");
    BForm out;
    out.deg = *d;
    for (const auto& [m, c] : f.terms()) {
        int du = m.deg_in(u), dv = m.deg_in(v);
        if (du + dv != m.total())
            throw ToolError("bad-argument", "binary form uses extra variables");
        out.phi += UPoly::t(dv) * c;
    }
    return out;
}

Poly from_bform(const BForm& f, VarId u, VarId v) {
    Poly r;
    for (int i = 0; i <= f.phi.deg(); ++i) {
        if (f.phi.coeff(i) == 0) continue;
        r += Poly::variable(u, f.deg - i) * Poly::variable(v, i) * f.phi.coeff(i);
    }
    return r;
}

std::string to_string(const UPoly& p) { return to_string(to_poly(p, var_id("t"))); }

}  // namespace k3
