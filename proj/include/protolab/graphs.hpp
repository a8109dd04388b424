#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace protolab {

// ---------------------------------------------------------------------------
// Graph types
// ---------------------------------------------------------------------------

/// Undirected simple graph (double-cover input).
struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    explicit SimpleGraph(int n_ = 0) : n(n_), adj(n_) {}
    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("SimpleGraph: bad edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::optional<int> regular_degree() const {
        if (n == 0) return std::nullopt;
        size_t d = adj[0].size();
        for (const auto& a : adj)
            if (a.size() != d) return std::nullopt;
        return static_cast<int>(d);
    }
};

/// Proper d-coloring of a d-regular bipartite graph, stored as the d perfect
/// matchings: matchings[color][left] = right endpoint. These double as the
/// per-edge-type permutations of a lifting.
struct EdgeColoring {
    int colors = 0;
    std::vector<std::vector<std::int32_t>> matchings;
};

struct RegularBipartiteGraph {
    int n_left = 0;
    int n_right = 0;
    int degree = 0;
    std::vector<std::vector<std::int32_t>> adj_left;  // sorted right-neighbor lists
    std::optional<EdgeColoring> coloring;

    std::vector<std::vector<std::int32_t>> adj_right() const {
        std::vector<std::vector<std::int32_t>> r(n_right);
        for (int v = 0; v < n_left; ++v)
            for (auto w : adj_left[v]) r[w].push_back(v);
        return r;
    }

    void validate() const {
        if (n_left <= 0 || n_right <= 0 || degree <= 0)
            throw std::invalid_argument("bipartite graph: empty");
        if (static_cast<int>(adj_left.size()) != n_left)
            throw std::invalid_argument("bipartite graph: bad adjacency size");
        std::vector<int> rdeg(n_right, 0);
        for (const auto& a : adj_left) {
            if (static_cast<int>(a.size()) != degree)
                throw std::invalid_argument("bipartite graph: not left-regular");
            for (auto w : a) {
                if (w < 0 || w >= n_right) throw std::invalid_argument("bipartite graph: bad neighbor");
                ++rdeg[w];
            }
            for (size_t k = 1; k < a.size(); ++k)
                if (a[k] == a[k - 1]) throw std::invalid_argument("bipartite graph: parallel edge");
        }
        for (int d : rdeg)
            if (d != degree) throw std::invalid_argument("bipartite graph: not right-regular");
    }
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// D(2,q) incidence graph: points (p1,p11) and lines [l1,l11] over F_q,
/// adjacent iff l11 - p11 = l1*p1. q-regular on 2q^2 vertices, girth >= 6.
/// Ships with the closed-form proper coloring color(p,l) = p1 + l1 (mod q).
inline RegularBipartiteGraph d2q_graph(int q) {
    if (!is_prime(q) || q < 5) throw std::invalid_argument("d2q_graph: q must be a prime >= 5");
    RegularBipartiteGraph g;
    g.n_left = g.n_right = q * q;
    g.degree = q;
    g.adj_left.assign(g.n_left, {});
    for (int p1 = 0; p1 < q; ++p1)
        for (int p11 = 0; p11 < q; ++p11) {
            auto& row = g.adj_left[p1 * q + p11];
            row.reserve(q);
            for (int l1 = 0; l1 < q; ++l1) {
                int l11 = static_cast<int>((static_cast<long>(l1) * p1 + p11) % q);
                row.push_back(l1 * q + l11);  // ascending in l1, hence sorted
            }
        }
    EdgeColoring col;
    col.colors = q;
    col.matchings.assign(q, std::vector<std::int32_t>(g.n_left));
    for (int c = 0; c < q; ++c)
        for (int p1 = 0; p1 < q; ++p1) {
            int l1 = (c - p1 % q + q) % q;
            for (int p11 = 0; p11 < q; ++p11) {
                int l11 = static_cast<int>((static_cast<long>(l1) * p1 + p11) % q);
                col.matchings[c][p1 * q + p11] = l1 * q + l11;
            }
        }
    g.coloring = std::move(col);
    return g;
}

/// Bipartite double cover: left/right copies of V(g); x ~ y in g yields the
/// edges (x, y') and (y, x'). Girth never decreases.
inline RegularBipartiteGraph bipartite_double_cover(const SimpleGraph& g) {
    auto d = g.regular_degree();
    if (!d || *d == 0) throw std::invalid_argument("bipartite_double_cover: input must be regular");
    RegularBipartiteGraph h;
    h.n_left = h.n_right = g.n;
    h.degree = *d;
    h.adj_left.assign(g.n, {});
    for (int u = 0; u < g.n; ++u) {
        h.adj_left[u].assign(g.adj[u].begin(), g.adj[u].end());
        std::sort(h.adj_left[u].begin(), h.adj_left[u].end());
    }
    h.validate();
    return h;
}

/// Konig edge coloring by alternating-path augmentation. d colors always
/// suffice for a d-regular bipartite graph.
inline EdgeColoring edge_color(const RegularBipartiteGraph& g) {
    g.validate();
    const int d = g.degree;
    const int none = -1;
    // color -> endpoint tables
    std::vector<std::vector<int>> lcol(g.n_left, std::vector<int>(d, none));
    std::vector<std::vector<int>> rcol(g.n_right, std::vector<int>(d, none));
    auto first_free = [&](const std::vector<int>& t) {
        for (int c = 0; c < static_cast<int>(t.size()); ++c)
            if (t[c] == none) return c;
        return -1;
    };
    std::vector<std::pair<int, int>> path;  // (left, right); edge k has color a if k even, b if odd
    for (int u = 0; u < g.n_left; ++u)
        for (auto w : g.adj_left[u]) {
            int a = first_free(lcol[u]);
            int b = first_free(rcol[w]);
            if (a != b) {
                // Flip the a/b alternating path starting at w. Left-side
                // arrivals always come via color a, which u lacks, so the
                // path cannot reach u. Collect first, then recolor in two
                // passes so shared endpoints are not clobbered mid-walk.
                path.clear();
                int cur = w, want = a;
                bool right_side = true;
                while (true) {
                    int nxt = right_side ? rcol[cur][want] : lcol[cur][want];
                    if (nxt == none) break;
                    path.push_back(right_side ? std::pair{nxt, cur} : std::pair{cur, nxt});
                    cur = nxt;
                    right_side = !right_side;
                    want = (want == a) ? b : a;
                }
                for (size_t k = 0; k < path.size(); ++k) {
                    int from = (k % 2 == 0) ? a : b;
                    lcol[path[k].first][from] = none;
                    rcol[path[k].second][from] = none;
                }
                for (size_t k = 0; k < path.size(); ++k) {
                    int to = (k % 2 == 0) ? b : a;
                    lcol[path[k].first][to] = path[k].second;
                    rcol[path[k].second][to] = path[k].first;
                }
            }
            lcol[u][a] = w;
            rcol[w][a] = u;
        }
    EdgeColoring col;
    col.colors = d;
    col.matchings.assign(d, std::vector<std::int32_t>(g.n_left, -1));
    for (int u = 0; u < g.n_left; ++u)
        for (int c = 0; c < d; ++c) {
            if (lcol[u][c] == none) throw std::runtime_error("edge_color: internal coloring gap");
            col.matchings[c][u] = lcol[u][c];
        }
    return col;
}

inline bool coloring_is_proper(const RegularBipartiteGraph& g, const EdgeColoring& col) {
    if (col.colors != g.degree) return false;
    std::vector<char> seen_r;
    for (int c = 0; c < col.colors; ++c) {
        if (static_cast<int>(col.matchings[c].size()) != g.n_left) return false;
        seen_r.assign(g.n_right, 0);
        for (int u = 0; u < g.n_left; ++u) {
            auto w = col.matchings[c][u];
            if (w < 0 || w >= g.n_right || seen_r[w]) return false;
            seen_r[w] = 1;
            if (!std::binary_search(g.adj_left[u].begin(), g.adj_left[u].end(), w)) return false;
        }
    }
    return true;
}

/// Splits every vertex of an edge-colored d-regular graph into d/t vertices of
/// degree t; copy k keeps the colors [k*t, (k+1)*t). Girth never decreases.
inline RegularBipartiteGraph degree_split(const RegularBipartiteGraph& g, int t) {
    if (t <= 0 || g.degree % t != 0) throw std::invalid_argument("degree_split: t must divide d");
    EdgeColoring col = g.coloring ? *g.coloring : edge_color(g);
    int parts = g.degree / t;
    RegularBipartiteGraph out;
    out.n_left = g.n_left * parts;
    out.n_right = g.n_right * parts;
    out.degree = t;
    out.adj_left.assign(out.n_left, {});
    EdgeColoring ncol;
    ncol.colors = t;
    ncol.matchings.assign(t, std::vector<std::int32_t>(out.n_left));
    for (int c = 0; c < g.degree; ++c) {
        int part = c / t, sub = c % t;
        for (int u = 0; u < g.n_left; ++u) {
            int w = col.matchings[c][u];
            int nu = u * parts + part;
            int nw = w * parts + part;
            out.adj_left[nu].push_back(nw);
            ncol.matchings[sub][nu] = nw;
        }
    }
    for (auto& a : out.adj_left) std::sort(a.begin(), a.end());
    out.coloring = std::move(ncol);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Girth
// ---------------------------------------------------------------------------

namespace detail {

// Exact girth of an undirected (multi)graph given as a combined adjacency
// list. BFS from every vertex; min over non-tree edges of du + dw + 1 is the
// girth. Parallel entries are length-2 cycles.
inline std::optional<int> girth_adjacency(const std::vector<std::vector<std::int32_t>>& adj,
                                          int stop_if_at_most = 0) {
    int n = static_cast<int>(adj.size());
    for (const auto& a : adj) {
        std::vector<std::int32_t> s(a);
        std::sort(s.begin(), s.end());
        for (size_t k = 1; k < s.size(); ++k)
            if (s[k] == s[k - 1]) return 2;
    }
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(n), parent(n);
    std::vector<int> q(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        int head = 0, tail = 0;
        q[tail++] = s;
        dist[s] = 0;
        parent[s] = -1;
        while (head < tail) {
            int u = q[head++];
            if (2 * dist[u] >= best) break;  // candidates from here are >= 2*dist[u]
            bool skipped_parent = false;
            for (int w : adj[u]) {
                if (w == parent[u] && !skipped_parent) {
                    skipped_parent = true;  // one occurrence is the tree edge
                    continue;
                }
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q[tail++] = w;
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
        if (stop_if_at_most > 0 && best <= stop_if_at_most) break;
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;  // acyclic
    return best;
}

inline std::vector<std::vector<std::int32_t>> combined_adjacency(const RegularBipartiteGraph& g) {
    std::vector<std::vector<std::int32_t>> adj(g.n_left + g.n_right);
    for (int u = 0; u < g.n_left; ++u)
        for (auto w : g.adj_left[u]) {
            adj[u].push_back(g.n_left + w);
            adj[g.n_left + w].push_back(u);
        }
    return adj;
}

}  // namespace detail

/// Exact girth; nullopt means acyclic.
inline std::optional<int> girth(const RegularBipartiteGraph& g) {
    return detail::girth_adjacency(detail::combined_adjacency(g));
}

/// Cheaper one-sided check: true iff girth >= target (BFS stops early).
inline bool girth_at_least(const RegularBipartiteGraph& g, int target) {
    auto res = detail::girth_adjacency(detail::combined_adjacency(g), target - 1);
    return !res || *res >= target;
}

inline bool is_connected(const RegularBipartiteGraph& g) {
    auto adj = detail::combined_adjacency(g);
    int n = static_cast<int>(adj.size());
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                q.push(w);
            }
    }
    return cnt == n;
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// "bipartite n_L n_R d" header, then one "left right [color]" line per edge,
/// 0-indexed. Colors are all-or-none.
inline void write_graph(std::ostream& os, const RegularBipartiteGraph& g) {
    os << "bipartite " << g.n_left << ' ' << g.n_right << ' ' << g.degree << '\n';
    if (g.coloring) {
        for (int c = 0; c < g.coloring->colors; ++c)
            for (int u = 0; u < g.n_left; ++u)
                os << u << ' ' << g.coloring->matchings[c][u] << ' ' << c << '\n';
    } else {
        for (int u = 0; u < g.n_left; ++u)
            for (auto w : g.adj_left[u]) os << u << ' ' << w << '\n';
    }
}

inline RegularBipartiteGraph read_graph(std::istream& is) {
    std::string tag;
    RegularBipartiteGraph g;
    if (!(is >> tag) || tag != "bipartite") throw std::runtime_error("graph file: missing 'bipartite' header");
    if (!(is >> g.n_left >> g.n_right >> g.degree)) throw std::runtime_error("graph file: bad header");
    g.adj_left.assign(g.n_left, {});
    std::vector<std::vector<std::int32_t>> match;
    bool colored = false, first = true;
    std::string line;
    std::getline(is, line);
    long edges = 0;
    while (std::getline(is, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        long u, w, c;
        if (!(ls >> u >> w)) continue;
        bool has_c = static_cast<bool>(ls >> c);
        if (first) {
            colored = has_c;
            first = false;
        } else if (colored != has_c) {
            throw std::runtime_error("graph file: colors must be on every edge or none");
        }
        if (u < 0 || u >= g.n_left || w < 0 || w >= g.n_right)
            throw std::runtime_error("graph file: endpoint out of range");
        g.adj_left[u].push_back(static_cast<std::int32_t>(w));
        if (colored) {
            if (c < 0 || c >= g.degree) throw std::runtime_error("graph file: color out of range");
            if (match.empty()) match.assign(g.degree, std::vector<std::int32_t>(g.n_left, -1));
            if (match[c][u] != -1) throw std::runtime_error("graph file: duplicate color at vertex");
            match[c][u] = static_cast<std::int32_t>(w);
        }
        ++edges;
    }
    if (edges != static_cast<long>(g.n_left) * g.degree)
        throw std::runtime_error("graph file: edge count does not match header");
    for (auto& a : g.adj_left) std::sort(a.begin(), a.end());
    g.validate();
    if (colored) {
        EdgeColoring col;
        col.colors = g.degree;
        col.matchings = std::move(match);
        if (!coloring_is_proper(g, col)) throw std::runtime_error("graph file: coloring not proper");
        g.coloring = std::move(col);
    }
    return g;
}

/// "graph n" header, then one "u v" line per undirected edge.
inline void write_simple_graph(std::ostream& os, const SimpleGraph& g) {
    os << "graph " << g.n << '\n';
    for (int u = 0; u < g.n; ++u)
        for (int w : g.adj[u])
            if (u < w) os << u << ' ' << w << '\n';
}

inline SimpleGraph read_simple_graph(std::istream& is) {
    std::string tag;
    int n;
    if (!(is >> tag) || tag != "graph") throw std::runtime_error("graph file: missing 'graph' header");
    if (!(is >> n)) throw std::runtime_error("graph file: bad header");
    SimpleGraph g(n);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        int u, w;
        if (ls >> u >> w) g.add_edge(u, w);
    }
    return g;
}

}  // namespace protolab
