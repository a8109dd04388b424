#include <doctest.h>

#include <numeric>
#include <sstream>

#include "protolab/lift.hpp"
#include "protolab/registry.hpp"
#include "protolab/rng.hpp"
#include "protolab/sim.hpp"

using namespace protolab;

namespace {

const BaseMatrix kEx2x4{{1, 1, 1, 2}, {1, 1, 1, 1}};

RegularBipartiteGraph complete_bipartite(int d) {
    RegularBipartiteGraph g;
    g.n_left = g.n_right = d;
    g.degree = d;
    g.adj_left.assign(d, {});
    EdgeColoring col;
    col.colors = d;
    col.matchings.assign(d, std::vector<std::int32_t>(d));
    for (int u = 0; u < d; ++u)
        for (int w = 0; w < d; ++w) {
            g.adj_left[u].push_back(w);
            col.matchings[(u + w) % d][u] = w;  // Latin-square coloring
        }
    g.coloring = std::move(col);
    return g;
}

// circulant bipartite graph: left i -> right (i + s) mod T for each shift
RegularBipartiteGraph circulant(int T, const std::vector<int>& shifts) {
    RegularBipartiteGraph g;
    g.n_left = g.n_right = T;
    g.degree = static_cast<int>(shifts.size());
    g.adj_left.assign(T, {});
    EdgeColoring col;
    col.colors = g.degree;
    col.matchings.assign(g.degree, std::vector<std::int32_t>(T));
    for (size_t k = 0; k < shifts.size(); ++k)
        for (int i = 0; i < T; ++i) {
            int w = (i + shifts[k]) % T;
            g.adj_left[i].push_back(w);
            col.matchings[k][i] = w;
        }
    for (auto& a : g.adj_left) std::sort(a.begin(), a.end());
    g.coloring = std::move(col);
    g.validate();
    return g;
}

std::vector<std::vector<std::int32_t>> identity_perms(int edges, int T) {
    std::vector<std::int32_t> id(T);
    std::iota(id.begin(), id.end(), 0);
    return std::vector<std::vector<std::int32_t>>(edges, id);
}

}  // namespace

TEST_CASE("node_split of the 2x4 example over K_{9,9}") {
    auto p = build_protograph(kEx2x4);
    auto lg = node_split(p, complete_bipartite(9));
    CHECK(lg.T == 9);
    CHECK(lg.blocklength() == 36);
    CHECK(lg.check_count() == 18);
    CHECK(lg.edge_count() == 81);
    CHECK(lg.is_simple());
    CHECK(validate_lift_structure(lg));
    // expanded degrees match the protograph's per-node degrees
    auto adj = lg.expand_bit_adj();
    for (int v = 0; v < p.num_vars; ++v)
        for (int t = 0; t < lg.T; ++t)
            CHECK(static_cast<int>(adj[v * lg.T + t].size()) == p.var_degree(v));
}

TEST_CASE("node_split rejects mismatched degree or missing coloring") {
    auto p = build_protograph(kEx2x4);
    CHECK_THROWS_AS(node_split(p, complete_bipartite(8)), std::invalid_argument);
    auto g = complete_bipartite(9);
    g.coloring.reset();
    CHECK_THROWS_AS(node_split(p, g), std::invalid_argument);
}

TEST_CASE("copy_permute with identity permutations is T disjoint copies") {
    BaseMatrix simple{{1, 1}, {1, 1}};  // 4-cycle protograph, no parallel edges
    auto p = build_protograph(simple);
    auto lg = copy_permute(p, 3, identity_perms(p.num_edges, 3));
    CHECK(lg.is_simple());
    CHECK(girth(lg) == girth(p));
    CHECK(girth(p) == 4);
}

TEST_CASE("copy_permute T=1 reproduces the protograph, parallel edges included") {
    auto p = build_protograph(kEx2x4);
    auto lg = copy_permute(p, 1, identity_perms(p.num_edges, 1));
    CHECK(lg.blocklength() == 4);
    // the protograph has parallel edges: girth 2, and the lift is not simple
    CHECK(girth(p) == 2);
    CHECK(girth(lg) == 2);
    auto w = lg.parallel_witness();
    REQUIRE(w.has_value());
    CHECK(w->type_a == 6);  // edges 7 and 8 (1-based)
    CHECK(w->type_b == 7);
    CHECK_THROWS_AS(SparseCode::from_lift(lg), std::invalid_argument);
}

TEST_CASE("copy_permute validates permutations") {
    auto p = build_protograph(kEx2x4);
    auto perms = identity_perms(p.num_edges, 4);
    perms[3][2] = 2;
    perms[3][1] = 2;  // not a bijection
    CHECK_THROWS_AS(copy_permute(p, 4, perms), std::invalid_argument);
    CHECK_THROWS_AS(copy_permute(p, 4, identity_perms(3, 4)), std::invalid_argument);
}

TEST_CASE("node_split equals copy_permute with the extracted matchings") {
    auto p = build_protograph(kEx2x4);
    auto g = complete_bipartite(9);
    auto lg = node_split(p, g);
    auto lg2 = copy_permute(p, lg.T, lg.perms);
    CHECK(lg2.expand_bit_adj() == lg.expand_bit_adj());
}

TEST_CASE("girth preservation across a matrix-by-graph grid") {
    std::vector<BaseMatrix> protos = {
        BaseMatrix{{1, 1}, {1, 1}},          // 4 edges
        BaseMatrix{{2, 3}},                  // 5 edges, parallel pair
        BaseMatrix{{3, 3}},                  // 6 edges
        kEx2x4,                              // 9 edges
        BaseMatrix{{1, 2, 1}, {2, 1, 1}},    // 8 edges
    };
    int cases = 0;
    for (const auto& b : protos) {
        auto p = build_protograph(b);
        int E = p.num_edges;
        std::vector<RegularBipartiteGraph> graphs;
        graphs.push_back(complete_bipartite(E));
        std::vector<int> consecutive(E), spread(E);
        std::iota(consecutive.begin(), consecutive.end(), 0);
        for (int k = 0; k < E; ++k) spread[k] = (k * k + k) % (2 * E + 5);
        std::sort(spread.begin(), spread.end());
        bool distinct = std::adjacent_find(spread.begin(), spread.end()) == spread.end();
        graphs.push_back(circulant(E + 3, consecutive));
        if (distinct) graphs.push_back(circulant(2 * E + 5, spread));
        if (E == 5) graphs.push_back(d2q_graph(5));
        for (const auto& g : graphs) {
            auto lg = node_split(p, g);
            auto gg = girth(g);
            auto gl = girth(lg);
            REQUIRE(gg.has_value());
            if (gl) CHECK(*gl >= *gg);
            CHECK(validate_lift_structure(lg));
            CHECK(lg.is_simple());  // node splits of simple graphs are simple
            ++cases;
        }
    }
    CHECK(cases >= 15);
}

TEST_CASE("blocklengths of the shipped constructions") {
    auto lg1 = node_split(build_protograph(find_builtin("r23-4x12")->matrix), d2q_graph(61));
    CHECK(lg1.blocklength() == 44652);
    auto lg2 = node_split(build_protograph(find_builtin("r34-3x12")->matrix), d2q_graph(61));
    CHECK(lg2.blocklength() == 44652);
}

TEST_CASE("alist export/import round trip") {
    auto p = build_protograph(BaseMatrix{{1, 2, 1}, {2, 1, 1}});
    auto lg = node_split(p, complete_bipartite(8));
    std::stringstream ss;
    write_alist(ss, lg);
    auto code = SparseCode::read_alist(ss);
    CHECK(code.n == lg.blocklength());
    CHECK(code.m == lg.check_count());
    auto direct = SparseCode::from_lift(lg);
    // same sparse structure up to within-row ordering
    for (std::int64_t v = 0; v < code.n; ++v) {
        auto a = code.bit_checks[v];
        auto b = direct.bit_checks[v];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("perm file round trip") {
    auto p = build_protograph(kEx2x4);
    auto lg = node_split(p, complete_bipartite(9));
    std::stringstream ss;
    write_perms(ss, lg);
    auto back = read_perms(ss);
    CHECK(back.T == lg.T);
    CHECK(back.proto.base == lg.proto.base);
    CHECK(back.perms == lg.perms);
}

TEST_CASE("write_alist refuses non-simple lifts") {
    auto p = build_protograph(kEx2x4);
    auto lg = copy_permute(p, 2, identity_perms(p.num_edges, 2));
    std::stringstream ss;
    CHECK_THROWS_AS(write_alist(ss, lg), std::runtime_error);
}
