#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "protolab/graphs.hpp"
#include "protolab/protograph.hpp"

namespace protolab {

/// T-fold lifting of a protograph, stored as one permutation of {0..T-1} per
/// edge type: lifted edge (e, t) joins bit (v(e), t) to check (c(e), perm_e(t)).
/// Lifted bit (v, t) has index v*T + t; lifted check (c, s) has index c*T + s.
struct LiftedGraph {
    Protograph proto;
    int T = 0;
    std::vector<std::vector<std::int32_t>> perms;  // [edge type][copy]

    std::int64_t blocklength() const { return static_cast<std::int64_t>(T) * proto.num_vars; }
    std::int64_t check_count() const { return static_cast<std::int64_t>(T) * proto.num_checks; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(T) * proto.num_edges; }

    struct ParallelWitness {
        int type_a = -1, type_b = -1, copy = -1;
    };

    /// Two parallel proto edges whose permutations collide produce a parallel
    /// lifted edge; GF(2) would cancel it, so codes reject such lifts.
    std::optional<ParallelWitness> parallel_witness() const {
        for (int a = 0; a < proto.num_edges; ++a)
            for (int b = a + 1; b < proto.num_edges; ++b) {
                if (proto.edge_var[a] != proto.edge_var[b] || proto.edge_chk[a] != proto.edge_chk[b])
                    continue;
                for (int t = 0; t < T; ++t)
                    if (perms[a][t] == perms[b][t]) return ParallelWitness{a, b, t};
            }
        return std::nullopt;
    }
    bool is_simple() const { return !parallel_witness().has_value(); }

    /// Bit-major adjacency (bit index -> check indices), possibly with
    /// parallel entries when the lift is not simple.
    std::vector<std::vector<std::int32_t>> expand_bit_adj() const {
        std::vector<std::vector<std::int32_t>> adj(blocklength());
        for (int e = 0; e < proto.num_edges; ++e) {
            std::int64_t vbase = static_cast<std::int64_t>(proto.edge_var[e]) * T;
            std::int64_t cbase = static_cast<std::int64_t>(proto.edge_chk[e]) * T;
            for (int t = 0; t < T; ++t)
                adj[vbase + t].push_back(static_cast<std::int32_t>(cbase + perms[e][t]));
        }
        return adj;
    }
};

namespace detail {

inline void validate_perms(int T, const std::vector<std::vector<std::int32_t>>& perms) {
    std::vector<char> seen(T);
    for (const auto& pi : perms) {
        if (static_cast<int>(pi.size()) != T)
            throw std::invalid_argument("lift: permutation size must equal T");
        std::fill(seen.begin(), seen.end(), 0);
        for (auto v : pi) {
            if (v < 0 || v >= T || seen[v]) throw std::invalid_argument("lift: not a permutation of {0..T-1}");
            seen[v] = 1;
        }
    }
}

}  // namespace detail

/// Copy-permute lifting with caller-supplied permutations.
inline LiftedGraph copy_permute(const Protograph& p, int T,
                                std::vector<std::vector<std::int32_t>> perms) {
    if (T < 1) throw std::invalid_argument("copy_permute: T must be >= 1");
    if (static_cast<int>(perms.size()) != p.num_edges)
        throw std::invalid_argument("copy_permute: need one permutation per edge type");
    detail::validate_perms(T, perms);
    return LiftedGraph{p, T, std::move(perms)};
}

/// Node splitting: every left vertex of an |E|-regular edge-colored graph
/// splits into |V| bits, every right vertex into |C| checks; the color-j edge
/// reconnects to the endpoints of protograph edge j. The color-class
/// matchings are exactly the lifting permutations, and the girth of the
/// result is at least the girth of g.
inline LiftedGraph node_split(const Protograph& p, const RegularBipartiteGraph& g) {
    if (g.degree != p.num_edges)
        throw std::invalid_argument("node_split: graph degree must equal protograph edge count (" +
                                    std::to_string(p.num_edges) + ", got " + std::to_string(g.degree) + ")");
    if (g.n_left != g.n_right) throw std::invalid_argument("node_split: graph sides must be equal");
    if (!g.coloring) throw std::invalid_argument("node_split: graph must be edge-colored");
    if (!coloring_is_proper(g, *g.coloring)) throw std::invalid_argument("node_split: coloring not proper");
    LiftedGraph lg;
    lg.proto = p;
    lg.T = g.n_left;
    lg.perms = g.coloring->matchings;  // color j <-> edge type j
    return lg;
}

/// Structural validation: every lifted node carries its protograph node's
/// incident type multiset exactly once per copy.
inline bool validate_lift_structure(const LiftedGraph& lg) {
    const auto& p = lg.proto;
    // bit side is immediate from the layout; check side needs the permutations
    std::vector<char> seen(lg.T);
    for (int e = 0; e < p.num_edges; ++e) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int t = 0; t < lg.T; ++t) {
            auto s = lg.perms[e][t];
            if (s < 0 || s >= lg.T || seen[s]) return false;
            seen[s] = 1;
        }
    }
    return true;
}

inline std::optional<int> girth(const LiftedGraph& lg) {
    auto bit_adj = lg.expand_bit_adj();
    std::int64_t nb = lg.blocklength(), nc = lg.check_count();
    std::vector<std::vector<std::int32_t>> adj(nb + nc);
    for (std::int64_t v = 0; v < nb; ++v)
        for (auto c : bit_adj[v]) {
            adj[v].push_back(static_cast<std::int32_t>(nb + c));
            adj[nb + c].push_back(static_cast<std::int32_t>(v));
        }
    return detail::girth_adjacency(adj);
}

inline std::optional<int> girth(const Protograph& p) {
    std::vector<std::vector<std::int32_t>> adj(p.num_vars + p.num_checks);
    for (int e = 0; e < p.num_edges; ++e) {
        adj[p.edge_var[e]].push_back(static_cast<std::int32_t>(p.num_vars + p.edge_chk[e]));
        adj[p.num_vars + p.edge_chk[e]].push_back(static_cast<std::int32_t>(p.edge_var[e]));
    }
    return detail::girth_adjacency(adj);
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

/// MacKay-style alist: "n m", "dmax_bit dmax_chk", bit degrees, check
/// degrees, then 1-based neighbor lists padded with 0.
inline void write_alist(std::ostream& os, const LiftedGraph& lg) {
    if (auto w = lg.parallel_witness())
        throw std::runtime_error("write_alist: lift has parallel edges (types " +
                                 std::to_string(w->type_a + 1) + "," + std::to_string(w->type_b + 1) +
                                 " at copy " + std::to_string(w->copy + 1) + ")");
    auto bit_adj = lg.expand_bit_adj();
    std::int64_t n = lg.blocklength(), m = lg.check_count();
    std::vector<std::vector<std::int32_t>> chk_adj(m);
    for (std::int64_t v = 0; v < n; ++v)
        for (auto c : bit_adj[v]) chk_adj[c].push_back(static_cast<std::int32_t>(v));
    size_t dbit = 0, dchk = 0;
    for (auto& a : bit_adj) {
        std::sort(a.begin(), a.end());
        dbit = std::max(dbit, a.size());
    }
    for (auto& a : chk_adj) {
        std::sort(a.begin(), a.end());
        dchk = std::max(dchk, a.size());
    }
    os << n << ' ' << m << '\n' << dbit << ' ' << dchk << '\n';
    for (std::int64_t v = 0; v < n; ++v) os << bit_adj[v].size() << (v + 1 < n ? ' ' : '\n');
    for (std::int64_t c = 0; c < m; ++c) os << chk_adj[c].size() << (c + 1 < m ? ' ' : '\n');
    for (std::int64_t v = 0; v < n; ++v) {
        for (size_t k = 0; k < dbit; ++k)
            os << (k < bit_adj[v].size() ? bit_adj[v][k] + 1 : 0) << (k + 1 < dbit ? ' ' : '\n');
    }
    for (std::int64_t c = 0; c < m; ++c) {
        for (size_t k = 0; k < dchk; ++k)
            os << (k < chk_adj[c].size() ? chk_adj[c][k] + 1 : 0) << (k + 1 < dchk ? ' ' : '\n');
    }
}

/// Self-contained permutation format:
///   lift T rows cols
///   <rows lines of the base matrix>
///   <|E| lines: permutation of {0..T-1} for each edge type>
inline void write_perms(std::ostream& os, const LiftedGraph& lg) {
    os << "lift " << lg.T << ' ' << lg.proto.base.rows << ' ' << lg.proto.base.cols << '\n';
    os << lg.proto.base.to_text();
    for (const auto& pi : lg.perms) {
        for (int t = 0; t < lg.T; ++t) os << pi[t] << (t + 1 < lg.T ? ' ' : '\n');
    }
}

inline LiftedGraph read_perms(std::istream& is) {
    std::string tag;
    int T, rows, cols;
    if (!(is >> tag) || tag != "lift") throw std::runtime_error("perm file: missing 'lift' header");
    if (!(is >> T >> rows >> cols)) throw std::runtime_error("perm file: bad header");
    BaseMatrix b(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(is >> b.at(r, c))) throw std::runtime_error("perm file: truncated base matrix");
    Protograph p = build_protograph(b);
    std::vector<std::vector<std::int32_t>> perms(p.num_edges, std::vector<std::int32_t>(T));
    for (int e = 0; e < p.num_edges; ++e)
        for (int t = 0; t < T; ++t)
            if (!(is >> perms[e][t])) throw std::runtime_error("perm file: truncated permutations");
    return copy_permute(p, T, std::move(perms));
}

}  // namespace protolab
