#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace k3 {

using Z = mpz_class;
using Q = mpq_class;

// Error with a short machine-readable kind ("unmapped-variable", "not-even",
// "degree-cap", ...) plus a human-readable message.
class ToolError : public std::runtime_error {
public:
    ToolError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

inline Z z_pow(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Q q_pow(const Q& b, unsigned long e) {
    Q r;
    mpz_pow_ui(r.get_num().get_mpz_t(), b.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), b.get_den().get_mpz_t(), e);
    return r;  // b canonical implies b^e canonical
}

inline int q_sign(const Q& a) { return sgn(a); }

inline bool q_is_integer(const Q& a) { return a.get_den() == 1; }

// Exact k-th root of a rational if it exists.
inline bool q_root(const Q& a, unsigned long k, Q& out) {
    if (k == 0) throw ToolError("bad-argument", "zeroth root");
    if (sgn(a) < 0 && k % 2 == 0) return false;
    Z n = a.get_num(), d = a.get_den(), rn, rd;
    int okn = mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k);
    int okd = mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k);
    if (!okn || !okd) return false;
    out = Q(rn, rd);
    out.canonicalize();
    return true;
}

inline Q parse_rational(const std::string& s) {
    Q r;
    if (r.set_str(s, 10) != 0)
        throw ToolError("parse", "bad rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Q& a) { return a.get_str(); }

}  // namespace k3
