#include "k3/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace k3 {

namespace {

ZMat zeros(int n) { return ZMat(n, std::vector<Z>(n, Z(0))); }

// Gram = -Cartan, so roots square to -2.
ZMat minus_cartan_path(int n) {
    ZMat g = zeros(n);
    for (int i = 0; i < n; ++i) {
        g[i][i] = -2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = 1;
    }
    return g;
}

}  // namespace

Lattice lat_A(int n) {
    if (n < 1) throw ToolError("bad-argument", "A_n needs n >= 1");
    return {"A" + std::to_string(n), minus_cartan_path(n)};
}

Lattice lat_D(int n) {
    if (n < 4) throw ToolError("bad-argument", "D_n needs n >= 4");
    // Path on 1..n-1 with the last node attached to n-2.
    ZMat g = minus_cartan_path(n);
    g[n - 1][n - 2] = g[n - 2][n - 1] = 0;
    g[n - 1][n - 3] = g[n - 3][n - 1] = 1;
    return {"D" + std::to_string(n), g};
}

Lattice lat_E(int n) {
    if (n < 6 || n > 8) throw ToolError("bad-argument", "E_n needs n in 6..8");
    // Path on 1,3,4,...,n with node 2 attached to 4 (Bourbaki numbering).
    ZMat g = zeros(n);
    for (int i = 0; i < n; ++i) g[i][i] = -2;
    auto link = [&](int a, int b) { g[a - 1][b - 1] = g[b - 1][a - 1] = 1; };
    link(1, 3);
    link(3, 4);
    link(2, 4);
    for (int i = 4; i < n; ++i) link(i, i + 1);
    return {"E" + std::to_string(n), g};
}

Lattice lat_H() { return {"H", {{Z(0), Z(1)}, {Z(1), Z(0)}}}; }

Lattice lat_rescale(const Lattice& l, int k, const std::string& name) {
    Lattice r = l;
    r.name = name.empty() ? l.name + "(" + std::to_string(k) + ")" : name;
    for (auto& row : r.gram)
        for (auto& x : row) x *= k;
    check_even(r);
    return r;
}

Lattice lat_span(const ZMat& gram, const std::string& name) {
    if (rows(gram) != cols(gram))
        throw ToolError("bad-argument", "gram matrix not square");
    Lattice l{name, gram};
    check_even(l);
    return l;
}

Lattice lat_sum(const std::vector<Lattice>& parts, const std::string& name) {
    int n = 0;
    for (const auto& p : parts) n += p.rank();
    ZMat g = zeros(n);
    std::string auto_name;
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rank(); ++i)
            for (int j = 0; j < p.rank(); ++j) g[off + i][off + j] = p.gram[i][j];
        off += p.rank();
        if (!auto_name.empty()) auto_name += "+";
        auto_name += p.name;
    }
    return {name.empty() ? auto_name : name, g};
}

Lattice lat_overA18() {
    std::vector<Lattice> parts(8, lat_A(1));
    std::vector<Q> w(8, Q(1, 2));
    return overlattice_from_glue(lat_sum(parts, "A1^8"), w, "N");
}

void check_even(const Lattice& l) {
    for (int i = 0; i < l.rank(); ++i)
        if (l.gram[i][i] % 2 != 0)
            throw ToolError("not-even", l.name + ": diagonal entry " +
                                            l.gram[i][i].get_str() + " at " +
                                            std::to_string(i));
}

Z lat_det(const Lattice& l) { return det(l.gram); }

Signature lat_signature(const Lattice& l) { return signature(l.gram); }

DiscGroup discriminant_group(const Lattice& l) {
    int n = l.rank();
    if (n == 0) return {};
    if (det(l.gram) == 0) throw ToolError("singular", "degenerate gram matrix");
    Snf s = snf(l.gram);
    // u*g*v = d. Cokernel Z^n / g Z^n has generators with dual coordinates
    // x_i = (column i of v) / d_i, of order d_i.
    DiscGroup dg;
    QMat gq = to_q(l.gram);
    std::vector<std::vector<Q>> gens;
    for (int i = 0; i < n; ++i) {
        const Z& di = s.d[i][i];
        if (di == 1) continue;
        dg.invariants.push_back(di);
        std::vector<Q> x(n);
        for (int r = 0; r < n; ++r) {
            Q e(s.v[r][i], di);
            e.canonicalize();  // two-arg mpq ctor does not reduce
            x[r] = e;
        }
        gens.push_back(std::move(x));
    }
    auto pairing = [&](const std::vector<Q>& a, const std::vector<Q>& b) {
        Q acc(0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) acc += a[r] * gq[r][c] * b[c];
        return acc;
    };
    // Explicit -> Q: a deduced return would be a gmp expression template
    // referencing locals that die on return.
    auto mod = [](const Q& x, long m) -> Q {  // representative in [0, m)
        Z k;
        mpz_fdiv_q(k.get_mpz_t(), x.get_num().get_mpz_t(),
                   x.get_den().get_mpz_t());
        Q r = x - Q(k);  // in [0, 1)
        Z km = k % m;
        if (km < 0) km += m;
        return Q(km) + r;
    };
    std::size_t k = gens.size();
    dg.b_values = QMat(k, std::vector<Q>(k, Q(0)));
    for (std::size_t i = 0; i < k; ++i) {
        dg.q_values.push_back(mod(pairing(gens[i], gens[i]), 2));
        for (std::size_t j = 0; j < k; ++j)
            dg.b_values[i][j] = mod(pairing(gens[i], gens[j]), 1);
    }
    dg.gens = std::move(gens);
    return dg;
}

TwoElementary two_elementary_invariants(const Lattice& l) {
    DiscGroup dg = discriminant_group(l);
    TwoElementary t;
    t.rho = l.rank();
    for (const Z& d : dg.invariants) {
        if (d != 2)
            throw ToolError("not-2-elementary",
                            l.name + ": invariant factor " + d.get_str());
        ++t.ell;
    }
    t.delta = 0;
    for (const Q& q : dg.q_values)
        if (!q_is_integer(q)) t.delta = 1;
    return t;
}

bool same_two_elementary_class(const Lattice& a, const Lattice& b) {
    Signature sa = lat_signature(a), sb = lat_signature(b);
    if (sa.pos != sb.pos || sa.neg != sb.neg || sa.zero || sb.zero) return false;
    TwoElementary ta = two_elementary_invariants(a);
    TwoElementary tb = two_elementary_invariants(b);
    return ta.rho == tb.rho && ta.ell == tb.ell && ta.delta == tb.delta;
}

Lattice overlattice_from_glue(const Lattice& l, const std::vector<Q>& w,
                              const std::string& name) {
    int n = l.rank();
    if (static_cast<int>(w.size()) != n)
        throw ToolError("bad-argument", "glue vector length mismatch");
    bool integral = true, half = true;
    for (const Q& x : w) {
        if (x.get_den() != 1) integral = false;
        if (x.get_den() != 1 && x.get_den() != 2) half = false;
    }
    if (integral) throw ToolError("bad-argument", "glue vector already in the lattice");
    if (!half) throw ToolError("bad-argument", "glue vector must have 2w integral");
    // Rows of [2I; 2w] span 2L', reduce to a basis and halve.
    ZMat m(n + 1, std::vector<Z>(n, Z(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 2;
    for (int j = 0; j < n; ++j) {
        Q t = w[j] * 2;
        m[n][j] = t.get_num();
    }
    ZMat basis = row_lattice_basis(m);
    if (rows(basis) != static_cast<std::size_t>(n))
        throw ToolError("internal", "overlattice basis rank drop");
    QMat b(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Q e(basis[i][j], 2);
            e.canonicalize();  // two-arg mpq ctor does not reduce
            b[i][j] = e;
        }
    QMat gram = q_mul(q_mul(b, to_q(l.gram)), q_transpose(b));
    ZMat zg = zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gram[i][j].get_den() != 1)
                throw ToolError("bad-argument",
                                "glue vector does not pair integrally");
            zg[i][j] = gram[i][j].get_num();
        }
    Lattice out{name.empty() ? l.name + "~" : name, zg};
    check_even(out);
    return out;
}

Lattice lattice_from_generators(const ZMat& pairing, const std::string& name) {
    std::size_t n = rows(pairing);
    if (n != cols(pairing)) throw ToolError("bad-argument", "pairing not square");
    std::vector<std::vector<Z>> ker = kernel_z(pairing);
    if (ker.empty()) return lat_span(pairing, name);
    // Extend the saturated kernel to a basis of Z^n: snf(K) = u K v with
    // diagonal 1s, so the rows of v^-1 start with a kernel basis; the
    // remaining rows descend to a basis of the quotient.
    std::size_t k = ker.size();
    ZMat km(k, std::vector<Z>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) km[i][j] = ker[i][j];
    Snf s = snf(km);
    for (std::size_t i = 0; i < k; ++i)
        if (s.d[i][i] != 1)
            throw ToolError("internal", "kernel basis not saturated");
    QMat vinv = inverse(to_q(s.v));
    ZMat rest(n - k, std::vector<Z>(n));
    for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (vinv[i][j].get_den() != 1)
                throw ToolError("internal", "unimodular inverse not integral");
            rest[i - k][j] = vinv[i][j].get_num();
        }
    ZMat g = z_mul(z_mul(rest, pairing), z_transpose(rest));
    return lat_span(g, name);
}

std::string lat_json(const Lattice& l) {
    nlohmann::ordered_json j;
    j["name"] = l.name;
    auto& g = j["gram"] = nlohmann::ordered_json::array();
    for (const auto& row : l.gram) {
        auto& r = g.emplace_back(nlohmann::ordered_json::array());
        for (const auto& x : row) {
            if (!x.fits_slong_p())
                throw ToolError("bad-argument", "gram entry too large for json");
            r.push_back(x.get_si());
        }
    }
    return j.dump(2);
}

Lattice lat_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ToolError("parse", e.what());
    }
    if (!j.contains("name") || !j.contains("gram"))
        throw ToolError("parse", "lattice json needs name and gram");
    Lattice l;
    l.name = j["name"].get<std::string>();
    for (const auto& row : j["gram"]) {
        std::vector<Z> r;
        for (const auto& x : row) r.emplace_back(x.get<long>());
        l.gram.push_back(std::move(r));
    }
    if (rows(l.gram) != cols(l.gram))
        throw ToolError("parse", "gram matrix not square");
    return l;
}

}  // namespace k3
