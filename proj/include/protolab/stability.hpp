#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "protolab/protograph.hpp"

namespace protolab {

/// 0/1 indicator of the density-evolution Jacobian at the origin, grad_f = eps * A.
/// Row i is nonzero only when l(i) = 2; then A(i,i') = 1 iff i' lies in
/// E_c(e_j) with e_j the single other edge at v(e_i).
struct GradientPattern {
    int size = 0;
    std::vector<std::vector<int>> row;  // sorted column indices per row
    std::vector<int> scc_of;            // component id per vertex
    std::vector<std::vector<int>> components;  // topological order (edges go earlier -> later)
    std::vector<char> nontrivial;       // per component: size > 1 or self-loop

    bool has_entry(int i, int j) const {
        return std::binary_search(row[i].begin(), row[i].end(), j);
    }
};

namespace detail {

// Iterative Tarjan; components come out in reverse topological order.
inline void tarjan_scc(const std::vector<std::vector<int>>& adj, std::vector<int>& comp_of,
                       std::vector<std::vector<int>>& comps) {
    int n = static_cast<int>(adj.size());
    comp_of.assign(n, -1);
    comps.clear();
    std::vector<int> index(n, -1), low(n, 0), stack, frame_v, frame_i;
    std::vector<char> on_stack(n, 0);
    int next_index = 0;
    for (int s = 0; s < n; ++s) {
        if (index[s] >= 0) continue;
        frame_v = {s};
        frame_i = {0};
        index[s] = low[s] = next_index++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!frame_v.empty()) {
            int v = frame_v.back();
            int& i = frame_i.back();
            if (i < static_cast<int>(adj[v].size())) {
                int w = adj[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frame_v.push_back(w);
                    frame_i.push_back(0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    comps.emplace_back();
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp_of[w] = static_cast<int>(comps.size()) - 1;
                        comps.back().push_back(w);
                    } while (w != v);
                }
                frame_v.pop_back();
                frame_i.pop_back();
                if (!frame_v.empty()) low[frame_v.back()] = std::min(low[frame_v.back()], low[v]);
            }
        }
    }
}

}  // namespace detail

inline GradientPattern gradient_pattern(const Protograph& p) {
    GradientPattern g;
    g.size = p.num_edges;
    g.row.resize(p.num_edges);
    for (int i = 0; i < p.num_edges; ++i) {
        if (p.bit_degree_of_edge(i) != 2) continue;
        int partner = p.ev[i][0];  // the single other edge at v(e_i)
        g.row[i] = p.ec[partner];
        std::sort(g.row[i].begin(), g.row[i].end());
    }
    detail::tarjan_scc(g.row, g.scc_of, g.components);
    std::reverse(g.components.begin(), g.components.end());  // topological
    for (size_t k = 0; k < g.components.size(); ++k)
        for (int v : g.components[k]) g.scc_of[v] = static_cast<int>(k);
    g.nontrivial.resize(g.components.size(), 0);
    for (size_t k = 0; k < g.components.size(); ++k) {
        if (g.components[k].size() > 1)
            g.nontrivial[k] = 1;
        else {
            int v = g.components[k][0];
            g.nontrivial[k] = g.has_entry(v, v);
        }
    }
    return g;
}

/// Perron root of A = max over nontrivial SCC blocks. Power iteration runs on
/// (B+I)/2 so periodic blocks (pure cycles) still converge; Collatz-Wielandt
/// ratios bracket the root, stopping at |error| <= tol.
inline double spectral_radius(const GradientPattern& g, double tol = 1e-9) {
    if (tol <= 0 || tol > 1e-3) throw std::invalid_argument("spectral_radius: tol in (0, 1e-3]");
    double rho = 0.0;
    for (size_t k = 0; k < g.components.size(); ++k) {
        if (!g.nontrivial[k]) continue;
        const auto& verts = g.components[k];
        int n = static_cast<int>(verts.size());
        std::vector<int> local(g.size, -1);
        for (int t = 0; t < n; ++t) local[verts[t]] = t;
        std::vector<std::vector<int>> badj(n);
        for (int t = 0; t < n; ++t)
            for (int c : g.row[verts[t]])
                if (local[c] >= 0) badj[t].push_back(local[c]);

        std::vector<double> x(n, 1.0), y(n);
        double est = 0;
        bool done = false;
        for (long it = 0; it < 100000 && !done; ++it) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (int t = 0; t < n; ++t) {
                double s = x[t];  // the +I part
                for (int c : badj[t]) s += x[c];
                y[t] = 0.5 * s;
                double ratio = y[t] / x[t];
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            double norm = 0;
            for (double v : y) norm = std::max(norm, v);
            for (int t = 0; t < n; ++t) x[t] = y[t] / norm;
            est = lo + 0.5 * (hi - lo);
            if (hi - lo < 0.5 * tol) done = true;
        }
        if (!done) throw std::runtime_error("spectral_radius: power iteration did not converge");
        rho = std::max(rho, 2.0 * est - 1.0);
    }
    return rho;
}

enum class StabilityCase { Deg2Forest = 1, DisjointCycles = 2, RmaxBound = 3 };

inline const char* to_string(StabilityCase c) {
    switch (c) {
        case StabilityCase::Deg2Forest: return "deg2-forest";
        case StabilityCase::DisjointCycles: return "disjoint-cycles";
        default: return "rmax-bound";
    }
}

struct StabilityReport {
    StabilityCase rule = StabilityCase::Deg2Forest;
    int r_max = 0;          // max over e in E_2 of |E_c(e) ∩ E_2|
    double rho = 0.0;       // spectral radius of the 0/1 pattern
    double epsilon_star = std::numeric_limits<double>::infinity();  // 1/rho
    double case_bound = std::numeric_limits<double>::infinity();    // guarantee of the case
    int s_f = 0;            // number of diagonal blocks
};

/// Classifies stability of the DE recursion. Case 2 is taken as "every G_2
/// component contains at most one cycle" (component edge count <= vertex
/// count): this is the condition under which the nontrivial SCC blocks are
/// pure cycles. Two edge-disjoint cycles joined by a path through a degree-2
/// bit couple into one block with spectral radius above 1, so the looser
/// reading would overstate the stability region.
inline StabilityReport classify_stability(const Protograph& p, double tol = 1e-9) {
    StabilityReport rep;
    auto g = gradient_pattern(p);
    rep.s_f = static_cast<int>(g.components.size());
    rep.rho = spectral_radius(g, tol);
    rep.epsilon_star = rep.rho > 0 ? 1.0 / rep.rho : std::numeric_limits<double>::infinity();

    // G_2 structure: degree-2 bits, their checks, and the E_2 edges.
    std::vector<char> is_deg2(p.num_vars, 0);
    for (int v = 0; v < p.num_vars; ++v)
        if (p.var_degree(v) == 2) is_deg2[v] = 1;

    detail::UnionFind uf(p.num_vars + p.num_checks);
    for (int e = 0; e < p.num_edges; ++e)
        if (is_deg2[p.edge_var[e]]) uf.unite(p.edge_var[e], p.num_vars + p.edge_chk[e]);
    std::vector<int> comp_edges(p.num_vars + p.num_checks, 0), comp_verts(p.num_vars + p.num_checks, 0);
    std::vector<char> in_g2(p.num_vars + p.num_checks, 0);
    for (int e = 0; e < p.num_edges; ++e)
        if (is_deg2[p.edge_var[e]]) {
            in_g2[p.edge_var[e]] = 1;
            in_g2[p.num_vars + p.edge_chk[e]] = 1;
            ++comp_edges[uf.find(p.edge_var[e])];
        }
    for (int u = 0; u < p.num_vars + p.num_checks; ++u)
        if (in_g2[u]) ++comp_verts[uf.find(u)];

    bool any_cycle = false, overlapping = false;
    for (int u = 0; u < p.num_vars + p.num_checks; ++u) {
        if (comp_verts[u] == 0) continue;
        if (comp_edges[u] > comp_verts[u] - 1) any_cycle = true;
        if (comp_edges[u] > comp_verts[u]) overlapping = true;
    }

    for (int e = 0; e < p.num_edges; ++e) {
        if (!is_deg2[p.edge_var[e]]) continue;
        int cnt = 0;
        for (int o : p.ec[e])
            if (is_deg2[p.edge_var[o]]) ++cnt;
        rep.r_max = std::max(rep.r_max, cnt);
    }

    if (!any_cycle) {
        rep.rule = StabilityCase::Deg2Forest;
        rep.case_bound = std::numeric_limits<double>::infinity();
    } else if (!overlapping) {
        rep.rule = StabilityCase::DisjointCycles;
        rep.case_bound = 1.0;
    } else {
        rep.rule = StabilityCase::RmaxBound;
        rep.case_bound = rep.r_max > 0 ? 1.0 / rep.r_max : 1.0;
    }
    return rep;
}

}  // namespace protolab
