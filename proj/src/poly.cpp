#include "k3/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace k3 {

namespace {

struct Registry {
    std::vector<std::string> names;
    std::map<std::string, VarId> ids;

    Registry() {
        // Canonical geometry variables, in the order used for printing and
        // term comparison everywhere.
        for (const char* n : {"u", "v", "w", "y", "X", "Y", "Z", "s", "t"})
            add(n);
    }

    VarId add(const std::string& n) {
        auto it = ids.find(n);
        if (it != ids.end()) return it->second;
        VarId v = static_cast<VarId>(names.size());
        names.push_back(n);
        ids.emplace(n, v);
        return v;
    }
};

Registry& reg() {
    static Registry r;
    return r;
}

}  // namespace

VarId var_id(const std::string& name) {
    if (name.empty()) throw ToolError("bad-argument", "empty variable name");
    return reg().add(name);
}

const std::string& var_name(VarId v) {
    auto& r = reg();
    if (v < 0 || v >= static_cast<VarId>(r.names.size()))
        throw ToolError("bad-argument", "unknown variable id");
    return r.names[v];
}

bool var_exists(const std::string& name) { return reg().ids.count(name) != 0; }

// ---------------------------------------------------------------- Mono

int Mono::total() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

int Mono::deg_in(VarId v) const {
    if (v < 0) throw ToolError("bad-argument", "negative variable id");
    return v < static_cast<VarId>(e.size()) ? e[v] : 0;
}

bool Mono::divides(const Mono& m) const {
    if (e.size() > m.e.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

static void trim(std::vector<std::uint16_t>& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

Mono Mono::times(const Mono& m) const {
    Mono r;
    r.e.resize(std::max(e.size(), m.e.size()), 0);
    for (std::size_t i = 0; i < r.e.size(); ++i) {
        unsigned s = (i < e.size() ? e[i] : 0u) + (i < m.e.size() ? m.e[i] : 0u);
        if (s > kMaxExp)
            throw ToolError("degree-cap", "exponent of " + var_name((VarId)i) +
                                              " exceeds " + std::to_string(kMaxExp));
        r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

Mono Mono::quotient_by(const Mono& m) const {
    Mono r = *this;
    for (std::size_t i = 0; i < m.e.size(); ++i) r.e[i] -= m.e[i];
    trim(r.e);
    return r;
}

Mono Mono::without(VarId v) const {
    Mono r = *this;
    if (v < static_cast<VarId>(r.e.size())) {
        r.e[v] = 0;
        trim(r.e);
    }
    return r;
}

bool MonoOrderDesc::operator()(const Mono& a, const Mono& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    std::size_t n = std::max(a.e.size(), b.e.size());
    for (std::size_t i = 0; i < n; ++i) {
        unsigned xa = i < a.e.size() ? a.e[i] : 0u;
        unsigned xb = i < b.e.size() ? b.e[i] : 0u;
        if (xa != xb) return xa > xb;
    }
    return false;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Q& c) {
    if (c != 0) t_.emplace(Mono{}, c);
}

Poly Poly::variable(const std::string& name, unsigned exp) {
    return variable(var_id(name), exp);
}

Poly Poly::variable(VarId v, unsigned exp) {
    var_name(v);  // validates
    if (exp > Mono::kMaxExp)
        throw ToolError("degree-cap", "exponent exceeds 64");
    if (exp == 0) return Poly(1);
    Mono m;
    m.e.assign(v + 1, 0);
    m.e[v] = static_cast<std::uint16_t>(exp);
    Poly p;
    p.t_.emplace(std::move(m), Q(1));
    return p;
}

Poly Poly::term(const Q& c, const Mono& m) {
    Poly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.e.empty());
}

Q Poly::constant_value() const {
    if (t_.empty()) return Q(0);
    if (!is_constant()) throw ToolError("bad-argument", "not a constant");
    return t_.begin()->second;
}

int Poly::degree() const {
    return t_.empty() ? -1 : t_.begin()->first.total();
}

int Poly::degree_in(VarId v) const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.deg_in(v));
    return d;
}

std::vector<VarId> Poly::vars() const {
    std::vector<char> seen;
    for (const auto& [m, c] : t_) {
        if (m.e.size() > seen.size()) seen.resize(m.e.size(), 0);
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) seen[i] = 1;
    }
    std::vector<VarId> vs;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) vs.push_back(static_cast<VarId>(i));
    return vs;
}

bool Poly::uses(VarId v) const { return degree_in(v) > 0; }

const Mono& Poly::leading_mono() const {
    if (t_.empty()) throw ToolError("bad-argument", "leading term of zero");
    return t_.begin()->first;
}

const Q& Poly::leading_coeff() const {
    if (t_.empty()) throw ToolError("bad-argument", "leading term of zero");
    return t_.begin()->second;
}

Q Poly::coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const Q& c, const Mono& m) {
    if (c == 0) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(c, m);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(-c, m);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term(ca * cb, ma.times(mb));
    return r;
}

Poly& Poly::operator*=(const Q& c) {
    if (c == 0) {
        t_.clear();
    } else {
        for (auto& [m, v] : t_) v *= c;
    }
    return *this;
}

Poly pow(const Poly& p, unsigned e) {
    Poly r(1), b = p;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Poly coeff_in(const Poly& p, VarId v, int k) {
    Poly r;
    for (const auto& [m, c] : p.terms())
        if (m.deg_in(v) == k) r.add_term(c, m.without(v));
    return r;
}

std::vector<Poly> coeffs_in(const Poly& p, VarId v) {
    int d = p.degree_in(v);
    if (d < 0) return {};
    std::vector<Poly> cs(d + 1);
    for (const auto& [m, c] : p.terms())
        cs[m.deg_in(v)].add_term(c, m.without(v));
    return cs;
}

Poly derivative(const Poly& p, VarId v) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        int k = m.deg_in(v);
        if (k == 0) continue;
        Mono d = m;
        d.e[v] -= 1;
        trim(d.e);
        r.add_term(c * k, d);
    }
    return r;
}

Poly subst(const Poly& p, const std::map<VarId, Poly>& m) {
    Poly r;
    for (const auto& [mono, c] : p.terms()) {
        Poly t(c);
        for (std::size_t i = 0; i < mono.e.size(); ++i) {
            if (!mono.e[i]) continue;
            auto it = m.find(static_cast<VarId>(i));
            Poly base = it != m.end() ? it->second
                                      : Poly::variable(static_cast<VarId>(i));
            t *= pow(base, mono.e[i]);
        }
        r += t;
    }
    return r;
}

Q eval(const Poly& p, const std::map<VarId, Q>& point) {
    Q r(0);
    for (const auto& [mono, c] : p.terms()) {
        Q t = c;
        for (std::size_t i = 0; i < mono.e.size(); ++i) {
            if (!mono.e[i]) continue;
            auto it = point.find(static_cast<VarId>(i));
            if (it == point.end())
                throw ToolError("unmapped-variable",
                                "no value for " + var_name((VarId)i));
            t *= q_pow(it->second, mono.e[i]);
        }
        r += t;
    }
    return r;
}

std::optional<int> homogeneous_degree(const Poly& p,
                                      const std::map<VarId, int>& weights) {
    if (p.is_zero()) return -1;
    std::optional<int> deg;
    for (const auto& [m, c] : p.terms()) {
        int d = 0;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            auto it = weights.find(static_cast<VarId>(i));
            d += m.e[i] * (it != weights.end() ? it->second : 1);
        }
        if (!deg) {
            deg = d;
        } else if (*deg != d) {
            return std::nullopt;
        }
    }
    return deg;
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& d) {
    if (d.is_zero()) throw ToolError("division-by-zero", "exact division by zero");
    Poly q, r = p;
    const Mono& dl = d.leading_mono();
    const Q& dc = d.leading_coeff();
    while (!r.is_zero()) {
        const Mono& rl = r.leading_mono();
        if (!dl.divides(rl)) return std::nullopt;
        Poly t = Poly::term(r.leading_coeff() / dc, rl.quotient_by(dl));
        q += t;
        r -= t * d;
    }
    return q;
}

PseudoDiv pseudo_divide(const Poly& p, const Poly& d, VarId v) {
    int dd = d.degree_in(v);
    if (dd < 0) throw ToolError("division-by-zero", "pseudo-division by zero");
    Poly lc = coeff_in(d, v, dd);
    PseudoDiv out{Poly(0), p, 0};
    int excess = out.rem.degree_in(v) - dd;
    if (excess < 0) return out;
    out.lc_power = static_cast<unsigned>(excess + 1);
    unsigned steps = 0;
    while (true) {
        int rd = out.rem.degree_in(v);
        if (rd < dd) break;
        Poly t = coeff_in(out.rem, v, rd) * Poly::variable(v, rd - dd);
        out.quot = out.quot * lc + t;
        out.rem = out.rem * lc - t * d;
        ++steps;
    }
    // Pad so the identity lc^k * p == quot*d + rem holds with k fixed.
    for (; steps < out.lc_power; ++steps) {
        out.quot *= lc;
        out.rem *= lc;
    }
    return out;
}

namespace {

// Fraction-free determinant. Entries are consumed.
Poly bareiss_det(std::vector<std::vector<Poly>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Poly(1);
    int sign = 1;
    Poly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return Poly(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = divide_exact(num, prev);
                if (!q)
                    throw ToolError("internal", "Bareiss division not exact");
                m[i][j] = std::move(*q);
            }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

}  // namespace

Poly resultant(const Poly& p, const Poly& q, VarId v) {
    if (p.is_zero() || q.is_zero()) return Poly(0);
    auto pc = coeffs_in(p, v), qc = coeffs_in(q, v);
    int dp = static_cast<int>(pc.size()) - 1, dq = static_cast<int>(qc.size()) - 1;
    if (dp == 0 && dq == 0) return Poly(1);
    if (dp == 0) return pow(p, dq);
    if (dq == 0) return pow(q, dp);
    std::size_t n = static_cast<std::size_t>(dp + dq);
    std::vector<std::vector<Poly>> syl(n, std::vector<Poly>(n, Poly(0)));
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) syl[i][i + j] = pc[dp - j];
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) syl[dq + i][i + j] = qc[dq - j];
    return bareiss_det(syl);
}

Poly discriminant(const Poly& p, VarId v) {
    int n = p.degree_in(v);
    if (n < 1) throw ToolError("bad-argument", "discriminant needs degree >= 1");
    Poly res = resultant(p, derivative(p, v), v);
    Poly lc = coeff_in(p, v, n);
    auto q = divide_exact(res, lc);
    if (!q) throw ToolError("internal", "discriminant: lc does not divide Res");
    if ((n * (n - 1) / 2) % 2) return -*q;
    return *q;
}

Poly reduce_double_cover(const Poly& p, VarId y, const Poly& F) {
    if (F.uses(y))
        throw ToolError("malformed-cover", "cover image involves the cover variable");
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        int k = m.deg_in(y);
        Poly t = Poly::term(c, m.without(y));
        if (k >= 2) t *= pow(F, k / 2);
        if (k % 2) t *= Poly::variable(y);
        r += t;
    }
    return r;
}

// ---------------------------------------------------------------- RationalFn

namespace {

// Common monomial factor of all terms (componentwise min).
Mono monomial_content(const Poly& p) {
    Mono g;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            g = m;
            first = false;
            continue;
        }
        for (std::size_t i = 0; i < g.e.size(); ++i)
            g.e[i] = std::min<std::uint16_t>(g.e[i],
                                             i < m.e.size() ? m.e[i] : 0);
        trim(g.e);
        if (g.e.empty()) break;
    }
    return g;
}

Q rational_content(const Poly& p) {
    Z num(0), den(1);
    for (const auto& [m, c] : p.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Q r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

RationalFn::RationalFn(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero())
        throw ToolError("division-by-zero", "rational function with zero denominator");
    if (num.is_zero()) {
        den = Poly(1);
        return;
    }
    Mono mg = monomial_content(num);
    Mono dg = monomial_content(den);
    Mono g = mg;
    g.e.resize(std::max(mg.e.size(), dg.e.size()), 0);
    for (std::size_t i = 0; i < g.e.size(); ++i)
        g.e[i] = std::min<std::uint16_t>(i < mg.e.size() ? mg.e[i] : 0,
                                         i < dg.e.size() ? dg.e[i] : 0);
    trim(g.e);
    if (!g.e.empty()) {
        Poly gp = Poly::term(Q(1), g);
        num = *divide_exact(num, gp);
        den = *divide_exact(den, gp);
    }
    // Scale so the denominator is integral-primitive with positive lead.
    Q scale = rational_content(den);
    if (den.leading_coeff() < 0) scale = -scale;
    Q inv = 1 / scale;
    num *= inv;
    den *= inv;
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num = -r.num;
    return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den - b.num * a.den, a.den * b.den);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.num, a.den * b.den);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.num.is_zero())
        throw ToolError("division-by-zero", "division by zero rational function");
    return RationalFn(a.num * b.den, a.den * b.num);
}

bool RationalFn::equals(const RationalFn& o) const {
    return num * o.den == o.num * den;
}

RationalFn pow(const RationalFn& f, unsigned e) {
    return RationalFn(pow(f.num, e), pow(f.den, e));
}

RationalFn substitute(const Poly& p, const RationalMap& m) {
    for (VarId v : p.vars())
        if (!m.comp.count(v))
            throw ToolError("unmapped-variable",
                            "map does not bind " + var_name(v));
    // Common denominator: for each variable, den^(max exponent in p).
    std::vector<int> maxe;
    for (const auto& [mono, c] : p.terms()) {
        if (mono.e.size() > maxe.size()) maxe.resize(mono.e.size(), 0);
        for (std::size_t i = 0; i < mono.e.size(); ++i)
            maxe[i] = std::max<int>(maxe[i], mono.e[i]);
    }
    Poly den(1);
    for (std::size_t i = 0; i < maxe.size(); ++i)
        if (maxe[i] > 0)
            den *= pow(m.comp.at((VarId)i).den, maxe[i]);
    Poly num(0);
    for (const auto& [mono, c] : p.terms()) {
        Poly t(c);
        for (std::size_t i = 0; i < maxe.size(); ++i) {
            if (maxe[i] == 0) continue;
            const RationalFn& f = m.comp.at((VarId)i);
            int e = mono.deg_in((VarId)i);
            if (e) t *= pow(f.num, e);
            if (maxe[i] - e) t *= pow(f.den, maxe[i] - e);
        }
        num += t;
    }
    return RationalFn(std::move(num), std::move(den));
}

Poly cover_residual(const Poly& p, const CoverRule& rule) {
    if (rule.C.uses(rule.y) || rule.F.uses(rule.y))
        throw ToolError("malformed-cover", "cover relation involves the cover variable");
    if (rule.C.is_zero())
        throw ToolError("malformed-cover", "cover relation has zero leading form");
    Poly rel = rule.C * Poly::variable(rule.y, 2) - rule.F;
    if (p.degree_in(rule.y) < 2) return p;
    return pseudo_divide(p, rel, rule.y).rem;
}

// ---------------------------------------------------------------- text io

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Q a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed = false;
        if (a != 1 || m.e.empty()) {
            os << a.get_str();
            printed = true;
        }
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            if (printed) os << "*";
            os << var_name((VarId)i);
            if (m.e[i] > 1) os << "^" << m.e[i];
            printed = true;
        }
    }
    return os.str();
}

std::string to_string(const RationalFn& f) {
    if (f.is_polynomial()) {
        Poly p = f.num;
        Q d = f.den.constant_value();
        if (d != 1) p *= 1 / d;
        return to_string(p);
    }
    return "(" + to_string(f.num) + ") / (" + to_string(f.den) + ")";
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }

    bool take(char c) {
        if (!peek(c)) return false;
        ++i;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ToolError("parse", what + " at offset " + std::to_string(i) +
                                     " in '" + s + "'");
    }

    std::string number() {
        skip();
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i) fail("expected digits");
        if (i < s.size() && s[i] == '/') {
            ++i;
            std::size_t d = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (d == i) fail("expected denominator digits");
        }
        return s.substr(b, i - b);
    }

    std::string ident() {
        skip();
        std::size_t b = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                                s[i] == '_')) {
            ++i;
        }
        if (b == i) fail("expected variable name");
        return s.substr(b, i - b);
    }

    // factor := rational | ident ('^' int)?
    Poly factor() {
        skip();
        if (i >= s.size()) fail("expected factor");
        if (std::isdigit(static_cast<unsigned char>(s[i])))
            return Poly(parse_rational(number()));
        std::string name = ident();
        unsigned e = 1;
        if (take('^')) {
            std::string n = number();
            if (n.find('/') != std::string::npos) fail("fractional exponent");
            unsigned long v = std::stoul(n);
            if (v > Mono::kMaxExp) fail("exponent exceeds 64");
            e = static_cast<unsigned>(v);
        }
        return Poly::variable(name, e);
    }

    Poly term() {
        Poly p = factor();
        while (take('*')) p *= factor();
        return p;
    }

    Poly expr() {
        skip();
        bool neg = false;
        if (take('-'))
            neg = true;
        else
            take('+');
        Poly p = term();
        if (neg) p = -p;
        while (true) {
            skip();
            if (i >= s.size()) break;
            if (take('+')) {
                p += term();
            } else if (take('-')) {
                p -= term();
            } else {
                fail("expected '+' or '-'");
            }
        }
        return p;
    }
};

}  // namespace

Poly parse_poly(const std::string& text) {
    Parser p(text);
    p.skip();
    if (p.i >= text.size()) throw ToolError("parse", "empty polynomial text");
    return p.expr();
}

}  // namespace k3
