#include "k3/linalg.hpp"

#include <algorithm>

namespace k3 {

std::size_t rows(const QMat& m) { return m.size(); }
std::size_t cols(const QMat& m) { return m.empty() ? 0 : m[0].size(); }
std::size_t rows(const ZMat& m) { return m.size(); }
std::size_t cols(const ZMat& m) { return m.empty() ? 0 : m[0].size(); }

QMat q_identity(std::size_t n) {
    QMat m(n, std::vector<Q>(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

ZMat z_identity(std::size_t n) {
    ZMat m(n, std::vector<Z>(n, Z(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

template <typename M>
static M mul_impl(const M& a, const M& b) {
    std::size_t n = rows(a), k = cols(a), p = cols(b);
    if (k != rows(b)) throw ToolError("bad-argument", "matrix shape mismatch");
    M c(n, typename M::value_type(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t l = 0; l < k; ++l) c[i][j] += a[i][l] * b[l][j];
    return c;
}

QMat q_mul(const QMat& a, const QMat& b) { return mul_impl(a, b); }
ZMat z_mul(const ZMat& a, const ZMat& b) { return mul_impl(a, b); }

template <typename M>
static M transpose_impl(const M& m) {
    M t(cols(m), typename M::value_type(rows(m), 0));
    for (std::size_t i = 0; i < rows(m); ++i)
        for (std::size_t j = 0; j < cols(m); ++j) t[j][i] = m[i][j];
    return t;
}

QMat q_transpose(const QMat& m) { return transpose_impl(m); }
ZMat z_transpose(const ZMat& m) { return transpose_impl(m); }

QMat to_q(const ZMat& m) {
    QMat q(rows(m), std::vector<Q>(cols(m)));
    for (std::size_t i = 0; i < rows(m); ++i)
        for (std::size_t j = 0; j < cols(m); ++j) q[i][j] = Q(m[i][j]);
    return q;
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols(m) && r < rows(m); ++c) {
        std::size_t p = r;
        while (p < rows(m) && m[p][c] == 0) ++p;
        if (p == rows(m)) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows(m); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (std::size_t j = 0; j < cols(m); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

Q det(QMat m) {
    std::size_t n = rows(m);
    if (n != cols(m)) throw ToolError("bad-argument", "determinant of non-square");
    Q d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return Q(0);
        if (p != k) {
            std::swap(m[p], m[k]);
            d = -d;
        }
        d *= m[k][k];
        Q inv = 1 / m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Q f = m[i][k] * inv;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

Z det(const ZMat& m) {
    std::size_t n = rows(m);
    if (n != cols(m)) throw ToolError("bad-argument", "determinant of non-square");
    if (n == 0) return Z(1);
    ZMat a = m;
    int sign = 1;
    Z prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return Z(0);
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Z num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                Z quo, rem;
                mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                            prev.get_mpz_t());
                if (rem != 0) throw ToolError("internal", "Bareiss division not exact");
                a[i][j] = quo;
            }
        prev = a[k][k];
    }
    Z d = a[n - 1][n - 1];
    return sign < 0 ? Z(-d) : d;
}

std::vector<std::vector<Q>> kernel(const QMat& m) {
    QMat a = m;
    auto pivots = rref(a);
    std::size_t n = cols(m);
    std::vector<char> is_pivot(n, 0);
    for (auto p : pivots) is_pivot[p] = 1;
    std::vector<std::vector<Q>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Q> v(n, Q(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

QMat inverse(const QMat& m) {
    std::size_t n = rows(m);
    if (n != cols(m)) throw ToolError("bad-argument", "inverse of non-square");
    QMat a = m;
    for (std::size_t i = 0; i < n; ++i) {
        auto id = q_identity(n);
        a[i].insert(a[i].end(), id[i].begin(), id[i].end());
    }
    auto pivots = rref(a);
    // Pivots must all land in the left block; a pivot in the identity block
    // means the original matrix has a rank-deficient left half.
    if (pivots.size() != n || pivots.back() >= n)
        throw ToolError("singular", "matrix not invertible");
    QMat inv(n, std::vector<Q>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

// ---------------------------------------------------------------- SNF

namespace {

void swap_rows(ZMat& a, ZMat& u, std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}

void swap_cols(ZMat& a, ZMat& v, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
}

void add_row(ZMat& a, ZMat& u, std::size_t dst, std::size_t src, const Z& f) {
    for (std::size_t j = 0; j < cols(a); ++j) a[dst][j] += f * a[src][j];
    for (std::size_t j = 0; j < cols(u); ++j) u[dst][j] += f * u[src][j];
}

void add_col(ZMat& a, ZMat& v, std::size_t dst, std::size_t src, const Z& f) {
    for (std::size_t i = 0; i < rows(a); ++i) a[i][dst] += f * a[i][src];
    for (std::size_t i = 0; i < rows(v); ++i) v[i][dst] += f * v[i][src];
}

void negate_row(ZMat& a, ZMat& u, std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
}

}  // namespace

Snf snf(const ZMat& a0) {
    Snf s;
    s.d = a0;
    std::size_t m = rows(a0), n = cols(a0);
    s.u = z_identity(m);
    s.v = z_identity(n);
    ZMat& a = s.d;

    std::size_t k = 0;
    while (k < m && k < n) {
        // Find a pivot of least absolute value in the trailing block.
        std::size_t pi = m, pj = n;
        Z best(0);
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j) {
                if (a[i][j] == 0) continue;
                Z v = abs(a[i][j]);
                if (best == 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;  // trailing block is zero
        if (pi != k) swap_rows(a, s.u, k, pi);
        if (pj != k) swap_cols(a, s.v, k, pj);

        bool clean = true;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (a[i][k] == 0) continue;
            Z f;
            mpz_fdiv_q(f.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
            add_row(a, s.u, i, k, Z(-f));
            if (a[i][k] != 0) clean = false;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a[k][j] == 0) continue;
            Z f;
            mpz_fdiv_q(f.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
            add_col(a, s.v, j, k, Z(-f));
            if (a[k][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; pick a new pivot

        // Divisibility pass: pivot must divide the whole trailing block.
        bool fixed = false;
        for (std::size_t i = k + 1; i < m && !fixed; ++i)
            for (std::size_t j = k + 1; j < n && !fixed; ++j) {
                if (a[i][j] % a[k][k] != 0) {
                    add_row(a, s.u, k, i, Z(1));
                    fixed = true;
                }
            }
        if (fixed) continue;
        if (a[k][k] < 0) negate_row(a, s.u, k);
        ++k;
    }
    return s;
}

std::vector<std::vector<Z>> kernel_z(const ZMat& m) {
    Snf s = snf(m);
    std::size_t n = cols(m);
    std::vector<std::vector<Z>> basis;
    for (std::size_t j = 0; j < n; ++j) {
        bool zero_col = j >= rows(s.d) || s.d[j][j] == 0;
        if (!zero_col) continue;
        std::vector<Z> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = s.v[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

ZMat row_lattice_basis(const ZMat& m) {
    if (m.empty()) return {};
    std::size_t n = cols(m);
    ZMat a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows(a); ++c) {
        // Euclidean column sweep on rows r..end.
        while (true) {
            std::size_t p = rows(a);
            Z best(0);
            for (std::size_t i = r; i < rows(a); ++i) {
                if (a[i][c] == 0) continue;
                Z v = abs(a[i][c]);
                if (best == 0 || v < best) {
                    best = v;
                    p = i;
                }
            }
            if (p == rows(a)) break;
            std::swap(a[p], a[r]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows(a); ++i) {
                if (a[i][c] == 0) continue;
                Z f;
                mpz_fdiv_q(f.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] != 0) {
            if (a[r][c] < 0)
                for (auto& x : a[r]) x = -x;
            ++r;
        }
    }
    a.resize(r);
    return a;
}

std::vector<Q> congruence_diagonal(QMat g) {
    std::size_t n = rows(g);
    if (n != cols(g)) throw ToolError("bad-argument", "congruence of non-square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g[i][j] != g[j][i])
                throw ToolError("bad-argument", "matrix not symmetric");

    auto add_sym = [&](std::size_t dst, std::size_t src, const Q& f) {
        for (std::size_t j = 0; j < n; ++j) g[dst][j] += f * g[src][j];
        for (std::size_t i = 0; i < n; ++i) g[i][dst] += f * g[i][src];
    };
    auto swap_sym = [&](std::size_t i, std::size_t j) {
        std::swap(g[i], g[j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(g[r][i], g[r][j]);
    };

    for (std::size_t k = 0; k < n; ++k) {
        if (g[k][k] == 0) {
            std::size_t p = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (g[i][i] != 0) {
                    p = i;
                    break;
                }
            if (p == n) {
                // All remaining diagonal zero; use an off-diagonal entry.
                std::size_t bi = n, bj = n;
                for (std::size_t i = k; i < n && bi == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (g[i][j] != 0) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi == n) break;  // trailing block zero
                add_sym(bi, bj, Q(1));  // diagonal picks up 2*g[bi][bj]
                p = bi;
            }
            if (p != k) swap_sym(k, p);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (g[i][k] == 0) continue;
            add_sym(i, k, -g[i][k] / g[k][k]);
        }
    }
    std::vector<Q> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = g[i][i];
    return diag;
}

Signature signature(const QMat& g) {
    Signature s;
    for (const Q& d : congruence_diagonal(g)) {
        if (d > 0)
            ++s.pos;
        else if (d < 0)
            ++s.neg;
        else
            ++s.zero;
    }
    return s;
}

Signature signature(const ZMat& g) { return signature(to_q(g)); }

}  // namespace k3
