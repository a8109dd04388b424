#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "protolab/base_matrix.hpp"
#include "protolab/rational.hpp"

namespace protolab {

/// Typed-edge multigraph view of a base matrix.
///
/// Edges are numbered canonically: ascending by (variable index, check index,
/// parallel-copy index). All indices are 0-based; with this ordering edge k
/// here is edge k+1 in 1-based notation.
struct Protograph {
    BaseMatrix base;
    int num_vars = 0;
    int num_checks = 0;
    int num_edges = 0;
    std::vector<int> edge_var;  // v(e)
    std::vector<int> edge_chk;  // c(e)
    std::vector<std::vector<int>> var_edges;  // incident edges per variable
    std::vector<std::vector<int>> chk_edges;  // incident edges per check
    std::vector<std::vector<int>> ev;  // E_v(e): other edges at v(e)
    std::vector<std::vector<int>> ec;  // E_c(e): other edges at c(e)

    int var_degree(int v) const { return static_cast<int>(var_edges[v].size()); }
    int chk_degree(int c) const { return static_cast<int>(chk_edges[c].size()); }
    // l(i): degree of v(e_i)
    int bit_degree_of_edge(int e) const { return var_degree(edge_var[e]); }
    // r(j): degree of c(e_j)
    int chk_degree_of_edge(int e) const { return chk_degree(edge_chk[e]); }
};

inline Protograph build_protograph(const BaseMatrix& b) {
    b.validate();
    Protograph p;
    p.base = b;
    p.num_checks = b.rows;
    p.num_vars = b.cols;
    p.var_edges.resize(b.cols);
    p.chk_edges.resize(b.rows);
    for (int v = 0; v < b.cols; ++v)
        for (int c = 0; c < b.rows; ++c)
            for (int k = 0; k < b.at(c, v); ++k) {
                int e = static_cast<int>(p.edge_var.size());
                p.edge_var.push_back(v);
                p.edge_chk.push_back(c);
                p.var_edges[v].push_back(e);
                p.chk_edges[c].push_back(e);
            }
    p.num_edges = static_cast<int>(p.edge_var.size());
    p.ev.resize(p.num_edges);
    p.ec.resize(p.num_edges);
    for (int e = 0; e < p.num_edges; ++e) {
        for (int o : p.var_edges[p.edge_var[e]])
            if (o != e) p.ev[e].push_back(o);
        for (int o : p.chk_edges[p.edge_chk[e]])
            if (o != e) p.ec[e].push_back(o);
    }
    return p;
}

inline Rational design_rate(const Protograph& p) {
    return Rational(p.num_vars - p.num_checks, p.num_vars);
}

/// Structural conditions for double-exponential decay: (1) the subgraph
/// induced by degree-2 bit nodes is cycle-free (a parallel pair counts as a
/// length-2 cycle), (2) every degree-2 bit shares a check with a bit of
/// degree >= 3.
struct DecayConditionReport {
    bool deg2_cycle_free = true;
    bool every_deg2_touches_deg3plus = true;
    int deg2_node_count = 0;
    std::vector<int> cycle_witness_edges;  // closed cycle in G_2 when condition 1 fails
    int unattached_witness = -1;           // offending degree-2 bit when condition 2 fails

    bool ok() const { return deg2_cycle_free && every_deg2_touches_deg3plus; }
};

namespace detail {

// G_2 node ids: bit v -> v, check c -> num_vars + c.
inline int g2_bit(int v) { return v; }
inline int g2_chk(const Protograph& p, int c) { return p.num_vars + c; }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace detail

inline DecayConditionReport check_decay_conditions(const Protograph& p) {
    DecayConditionReport rep;
    std::vector<char> is_deg2(p.num_vars, 0);
    for (int v = 0; v < p.num_vars; ++v)
        if (p.var_degree(v) == 2) {
            is_deg2[v] = 1;
            ++rep.deg2_node_count;
        }

    // Condition 1: cycle search in G_2 via union-find over its edges, in
    // canonical edge order; the first cycle-closing edge yields the witness.
    detail::UnionFind uf(p.num_vars + p.num_checks);
    std::vector<std::vector<std::pair<int, int>>> g2_adj(p.num_vars + p.num_checks);  // (node, edge)
    for (int e = 0; e < p.num_edges && rep.deg2_cycle_free; ++e) {
        int v = p.edge_var[e];
        if (!is_deg2[v]) continue;
        int a = detail::g2_bit(v);
        int b = detail::g2_chk(p, p.edge_chk[e]);
        if (!uf.unite(a, b)) {
            rep.deg2_cycle_free = false;
            // BFS over previously inserted G_2 edges recovers the a..b path.
            std::vector<int> prev_node(g2_adj.size(), -1), prev_edge(g2_adj.size(), -1);
            std::queue<int> q;
            q.push(a);
            prev_node[a] = a;
            while (!q.empty() && prev_node[b] < 0) {
                int u = q.front();
                q.pop();
                for (auto [w, we] : g2_adj[u])
                    if (prev_node[w] < 0) {
                        prev_node[w] = u;
                        prev_edge[w] = we;
                        q.push(w);
                    }
            }
            for (int u = b; u != a; u = prev_node[u]) rep.cycle_witness_edges.push_back(prev_edge[u]);
            std::reverse(rep.cycle_witness_edges.begin(), rep.cycle_witness_edges.end());
            rep.cycle_witness_edges.push_back(e);
        } else {
            g2_adj[a].push_back({b, e});
            g2_adj[b].push_back({a, e});
        }
    }

    // Condition 2: attachment to a degree >= 3 bit through a shared check.
    for (int v = 0; v < p.num_vars && rep.every_deg2_touches_deg3plus; ++v) {
        if (!is_deg2[v]) continue;
        bool attached = false;
        for (int e : p.var_edges[v]) {
            for (int o : p.chk_edges[p.edge_chk[e]]) {
                int u = p.edge_var[o];
                if (u != v && p.var_degree(u) >= 3) {
                    attached = true;
                    break;
                }
            }
            if (attached) break;
        }
        if (!attached) {
            rep.every_deg2_touches_deg3plus = false;
            rep.unattached_witness = v;
        }
    }
    return rep;
}

/// "v1-c1-v2-c2-v1"-style rendering of a cycle witness (1-based labels).
inline std::string format_cycle(const Protograph& p, const std::vector<int>& cycle_edges) {
    if (cycle_edges.empty()) return "";
    std::string out;
    int e0 = cycle_edges.front();
    // orient so consecutive edges share a node
    bool start_at_var = true;
    if (cycle_edges.size() > 1) {
        int e1 = cycle_edges[1];
        start_at_var = (p.edge_chk[e0] == p.edge_chk[e1]);  // first hop crosses a check
    }
    int node_is_var = start_at_var;
    int cur = start_at_var ? p.edge_var[e0] : p.edge_chk[e0];
    out += (node_is_var ? "v" : "c") + std::to_string(cur + 1);
    for (int e : cycle_edges) {
        node_is_var = !node_is_var;
        cur = node_is_var ? p.edge_var[e] : p.edge_chk[e];
        out += std::string("-") + (node_is_var ? "v" : "c") + std::to_string(cur + 1);
    }
    return out;
}

}  // namespace protolab
