#include "k3/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace k3 {

int DualGraph::index_of(const std::string& curve) const {
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (curves[i] == curve) return static_cast<int>(i);
    throw ToolError("unknown-curve", lattice_name + ": no curve '" + curve + "'");
}

namespace {

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ToolError("parse", e.what());
    }
}

DualGraph graph_from(const nlohmann::json& j) {
    DualGraph g;
    if (!j.contains("lattice") || !j.contains("curves") || !j.contains("edges"))
        throw ToolError("parse", "graph json needs lattice, curves, edges");
    g.lattice_name = j["lattice"].get<std::string>();
    for (const auto& c : j["curves"]) g.curves.push_back(c.get<std::string>());
    if (j.contains("notes")) g.notes = j["notes"].get<std::string>();
    std::size_t n = g.curves.size();
    g.m = ZMat(n, std::vector<Z>(n, Z(0)));
    for (std::size_t i = 0; i < n; ++i) g.m[i][i] = -2;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
            throw ToolError("parse", "edge must be [a, b] or [a, b, mult]");
        int a = g.index_of(e[0].get<std::string>());
        int b = g.index_of(e[1].get<std::string>());
        long mult = e.size() == 3 ? e[2].get<long>() : 1;
        if (a == b) throw ToolError("parse", "loop edge at " + g.curves[a]);
        if (g.m[a][b] != 0)
            throw ToolError("parse", "duplicate edge " + g.curves[a] + "-" +
                                         g.curves[b]);
        g.m[a][b] = g.m[b][a] = mult;
    }
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError("parse", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

DualGraph graph_from_json(const std::string& text) {
    return graph_from(parse_json(text));
}

DualGraph load_graph(const std::string& path) {
    return graph_from_json(slurp(path));
}

Z pair(const DualGraph& g, const Divisor& a, const Divisor& b) {
    Z acc(0);
    for (const auto& [ca, wa] : a)
        for (const auto& [cb, wb] : b)
            acc += wa * wb * g.m[g.index_of(ca)][g.index_of(cb)];
    return acc;
}

Z self_int(const DualGraph& g, const Divisor& a) { return pair(g, a, a); }

NefReport nef_against_listed(const DualGraph& g, const Divisor& d) {
    NefReport r;
    for (const auto& c : g.curves) {
        Divisor e{{c, Z(1)}};
        if (pair(g, d, e) < 0) {
            r.ok = false;
            r.witness = c;
            return r;
        }
    }
    return r;
}

SplitCheck check_polarization_split(const DualGraph& g, const Divisor& d2,
                                    const std::vector<std::string>& b,
                                    const std::vector<Z>& b_weights,
                                    const std::vector<std::string>& a,
                                    bool b_combined) {
    SplitCheck s;
    auto expect = [&](const std::string& what, const Z& got, long want) {
        if (got != want) {
            s.ok = false;
            s.failures.push_back(what + " = " + got.get_str() +
                                 ", expected " + std::to_string(want));
        }
    };
    if (b.size() != b_weights.size())
        throw ToolError("bad-argument", "b and b_weights length mismatch");
    Divisor h = d2;
    for (std::size_t i = 0; i < b.size(); ++i) h[b[i]] += b_weights[i];
    expect("D2^2", self_int(g, d2), 2);
    expect("H^2", self_int(g, h), 4);
    if (b_combined) {
        Divisor bsum;
        for (std::size_t i = 0; i < b.size(); ++i) bsum[b[i]] += b_weights[i];
        expect("H.b", pair(g, h, bsum), 0);
    } else {
        for (const auto& c : b)
            expect("H." + c, pair(g, h, Divisor{{c, Z(1)}}), 0);
    }
    Divisor h_minus_a = h;
    for (const auto& c : a) {
        expect("H." + c, pair(g, h, Divisor{{c, Z(1)}}), 0);
        h_minus_a[c] -= 1;
    }
    expect("(H - sum a)^2", self_int(g, h_minus_a), 2);
    return s;
}

std::string chain_type(const DualGraph& g, const std::vector<std::string>& curves) {
    std::size_t n = curves.size();
    if (n == 0) throw ToolError("not-ade", "empty curve list");
    std::vector<int> idx;
    for (const auto& c : curves) idx.push_back(g.index_of(c));
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Z& m = g.m[idx[i]][idx[j]];
            if (m == 0) continue;
            if (m != 1)
                throw ToolError("not-ade", "multiple edge inside chain at " +
                                               curves[i] + "-" + curves[j]);
            adj[i].push_back(static_cast<int>(j));
            adj[j].push_back(static_cast<int>(i));
        }
    // Connectivity and tree check: a connected graph on n nodes is a tree
    // iff it has n-1 edges.
    std::size_t edges = 0;
    for (const auto& v : adj) edges += v.size();
    edges /= 2;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n) throw ToolError("not-ade", "curve list not connected");
    if (edges != n - 1) throw ToolError("not-ade", "curve list has a cycle");
    std::vector<int> forks;
    for (std::size_t i = 0; i < n; ++i) {
        if (adj[i].size() > 3) throw ToolError("not-ade", "valency above 3");
        if (adj[i].size() == 3) forks.push_back(static_cast<int>(i));
    }
    if (forks.size() > 1) throw ToolError("not-ade", "two fork nodes");
    if (forks.empty()) return "A" + std::to_string(n);
    // Arm lengths from the fork.
    std::vector<int> arms;
    for (int start : adj[forks[0]]) {
        int len = 1, prev = forks[0], cur = start;
        while (true) {
            int next = -1;
            for (int w : adj[cur])
                if (w != prev) next = w;
            if (next < 0) break;
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return "E" + std::to_string(n);
    throw ToolError("not-ade", "arm profile not ADE");
}

NsCheck ns_check(const DualGraph& g, const TwoElementary& expected) {
    NsCheck r;
    r.lattice = lattice_from_generators(g.m, g.lattice_name);
    r.got = two_elementary_invariants(r.lattice);
    r.matches = r.got.rho == expected.rho && r.got.ell == expected.ell &&
                r.got.delta == expected.delta;
    return r;
}

InvolutionCheck check_involution(const DualGraph& g,
                                 const std::map<std::string, std::string>& perm,
                                 const Divisor& d) {
    std::size_t n = g.curves.size();
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = perm.find(g.curves[i]);
        p[i] = it == perm.end() ? static_cast<int>(i) : g.index_of(it->second);
    }
    InvolutionCheck r;
    r.preserves_pairing = true;
    for (std::size_t i = 0; i < n && r.preserves_pairing; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.m[i][j] != g.m[p[i]][p[j]]) {
                r.preserves_pairing = false;
                break;
            }
    Divisor image;
    for (const auto& [c, w] : d) image[g.curves[p[g.index_of(c)]]] += w;
    for (auto it = image.begin(); it != image.end();)
        it = it->second == 0 ? image.erase(it) : std::next(it);
    Divisor src = d;
    for (auto it = src.begin(); it != src.end();)
        it = it->second == 0 ? src.erase(it) : std::next(it);
    r.fixes_divisor = image == src;
    return r;
}

GraphCase graph_case_from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    GraphCase c;
    c.g = graph_from(j);
    if (j.contains("d2"))
        for (const auto& [k, v] : j["d2"].items()) c.d2[k] = Z(v.get<long>());
    if (j.contains("b"))
        for (const auto& x : j["b"]) c.b.push_back(x.get<std::string>());
    if (j.contains("b_weights"))
        for (const auto& x : j["b_weights"]) c.b_weights.emplace_back(x.get<long>());
    if (c.b_weights.empty()) c.b_weights.assign(c.b.size(), Z(1));
    if (j.contains("b_combined")) c.b_combined = j["b_combined"].get<bool>();
    if (j.contains("a"))
        for (const auto& x : j["a"]) c.a.push_back(x.get<std::string>());
    if (j.contains("a_type")) c.a_type = j["a_type"].get<std::string>();
    if (j.contains("b_type")) c.b_type = j["b_type"].get<std::string>();
    if (j.contains("expect")) {
        const auto& e = j["expect"];
        if (!e.is_array() || e.size() != 3)
            throw ToolError("parse", "expect must be [rho, ell, delta]");
        c.expect = {e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
    }
    if (j.contains("involution"))
        for (const auto& [k, v] : j["involution"].items())
            c.involution[k] = v.get<std::string>();
    return c;
}

GraphCase load_graph_case(const std::string& path) {
    return graph_case_from_json(slurp(path));
}

}  // namespace k3
