#include "altroute/dfs_labeling.hpp"
#include "altroute/edge_propagation.hpp"
#include "altroute/node.hpp"
#include "support/brute_force.hpp"

#include <doctest.h>

using namespace altroute;
using namespace altroute::testing;

namespace {

struct Collected {
    std::unique_ptr<RouterNetwork> net;
    DfsLabels labels;
    SimStats stats;
};

Collected collect(const Graph& g, NodeId sink, SimConfig config = {}) {
    Collected c;
    c.net = std::make_unique<RouterNetwork>(g, dijkstra_spt(g, sink), config);
    run_wake_and_label(*c.net);
    c.labels = labels_of(*c.net);
    c.stats = collect_non_tree_edges(*c.net);
    return c;
}

NonTreeEdgeMsg edge_msg(const Collected& c, NodeId a, NodeId b) {
    const auto& g = c.net->graph();
    const auto& dist = c.net->tree().dist;
    NonTreeEdgeMsg m;
    m.p1 = std::min(a, b);
    m.p2 = std::max(a, b);
    m.p1_labels = c.labels[m.p1];
    m.p2_labels = c.labels[m.p2];
    m.cost = *g.edge_cost(a, b);
    m.fixed_green_weight = dist[a] + m.cost + dist[b];
    return m;
}

EdgeRecord rec(NodeId u, NodeId v, int cost, int fgw) {
    return EdgeRecord{u, v, Cost::whole(cost), Cost::whole(fgw)};
}

bool is_tree_edge(const ShortestPathTree& t, NodeId a, NodeId b) { return t.parent[a] == b || t.parent[b] == a; }

NodeId walk_nca(const std::vector<NodeId>& parent, NodeId a, NodeId b) {
    for (NodeId cur = a;; cur = parent[cur]) {
        if (walk_is_ancestor(parent, cur, b)) return cur;
    }
}

std::size_t hops(const std::vector<NodeId>& parent, NodeId v, NodeId top) {
    std::size_t h = 0;
    for (; v != top; v = parent[v]) ++h;
    return h;
}

/// Lexicographic (weight, u, v) minimum.
struct Best {
    std::optional<std::tuple<Cost, NodeId, NodeId>> key;
    void offer(Cost w, NodeId u, NodeId v) {
        auto k = std::tuple{w, std::min(u, v), std::max(u, v)};
        if (!key || k < *key) key = k;
    }
};

std::vector<std::pair<Graph, NodeId>> small_corpus() {
    std::vector<std::pair<Graph, NodeId>> out;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 4 + seed % 6;
        const double degree = seed % 3 == 0 ? 3.0 : 2.5;
        out.emplace_back(small_biconnected(n, degree, seed), static_cast<NodeId>(seed % n));
    }
    out.emplace_back(ring5(), 0);
    out.emplace_back(g2(), 0);
    return out;
}

}  // namespace

TEST_CASE("fixed green weight examples") {
    const auto g2tree = dijkstra_spt(g2(), 0);
    CHECK(fixed_green_weight(Edge{0, 3, Cost::whole(10)}, g2tree.dist) == Cost::whole(12));
    CHECK(fixed_green_weight(Edge{2, 3, Cost::whole(1)}, g2tree.dist) == Cost::whole(5));
    const auto ringtree = dijkstra_spt(ring5(), 0);
    CHECK(fixed_green_weight(Edge{2, 3, Cost::whole(1)}, ringtree.dist) == Cost::whole(5));
}

TEST_CASE("G2 stores") {
    const Collected c = collect(g2(), 0);
    CHECK(c.net->node(1).stores.children_green == std::map<NodeId, EdgeRecord>{{3, rec(0, 3, 10, 12)}});
    CHECK(c.net->node(1).stores.parent_blue.empty());
    CHECK(c.net->node(2).stores.parent_blue == std::map<NodeId, EdgeRecord>{{3, rec(2, 3, 1, 5)}});
    CHECK(c.net->node(3).stores.parent_blue == std::map<NodeId, EdgeRecord>{{2, rec(2, 3, 1, 5)}});
    CHECK(c.net->node(2).stores.children_green.empty());
    CHECK(c.net->node(3).stores.children_green.empty());
    CHECK(c.net->node(0).stores == EdgeStores{});
    // (2,3) climbs one hop from each side; (0,3) climbs two hops from 3.
    CHECK(c.stats.delivered_of(MessageKind::NonTreeEdge) == 4);
}

TEST_CASE("record_non_tree_edge traces on G2") {
    Collected c = collect(g2(), 0);
    SimNetwork& sim = c.net->sim();

    SUBCASE("red edge arriving at the common ancestor is dropped") {
        NodeActor& x = c.net->node(1);
        x.stores = {};
        NonTreeEdgeMsg m = edge_msg(c, 2, 3);
        m.sender = 2;
        record_non_tree_edge(x, sim, m);
        CHECK(x.stores == EdgeStores{});
        CHECK(sim.run_until_quiescent().total_sent() == 0);
    }
    SUBCASE("green edge from a child is stored and forwarded") {
        NodeActor& x = c.net->node(1);
        x.stores = {};
        NonTreeEdgeMsg m = edge_msg(c, 3, 0);
        m.sender = 3;
        record_non_tree_edge(x, sim, m);
        CHECK(x.stores.children_green.at(3) == rec(0, 3, 10, 12));
        CHECK(x.stores.parent_blue.empty());
        const SimStats stats = sim.run_until_quiescent();
        CHECK(stats.sent_of(MessageKind::NonTreeEdge) == 1);
        CHECK(c.net->node(0).stores == EdgeStores{});
    }
    SUBCASE("own edge becomes a blue entry and is forwarded") {
        NodeActor& x1 = c.net->node(2);
        x1.stores = {};
        NonTreeEdgeMsg m = edge_msg(c, 2, 3);
        m.sender = 2;
        record_non_tree_edge(x1, sim, m);
        CHECK(x1.stores.parent_blue.at(3) == rec(2, 3, 1, 5));
        CHECK(x1.stores.children_green.empty());
        CHECK(sim.run_until_quiescent().sent_of(MessageKind::NonTreeEdge) == 1);
    }
    SUBCASE("an outside endpoint in no sibling subtree is a label inconsistency") {
        NodeActor& x1 = c.net->node(2);
        x1.labels.siblings.clear();
        NonTreeEdgeMsg m = edge_msg(c, 2, 3);
        m.sender = 2;
        CHECK_THROWS_WITH_AS(record_non_tree_edge(x1, sim, m), "label inconsistency", std::runtime_error);
    }
}

TEST_CASE("edge_is_blue_for_parent examples") {
    const Collected c = collect(g2(), 0);
    CHECK(edge_is_blue_for_parent(c.net->node(2), edge_msg(c, 2, 3)));
    CHECK_FALSE(edge_is_blue_for_parent(c.net->node(2), edge_msg(c, 3, 0)));
    // Outside endpoint is the parent itself.
    CHECK_FALSE(edge_is_blue_for_parent(c.net->node(2), edge_msg(c, 2, 1)));
    // Outside endpoint beyond the parent's subtree.
    CHECK_FALSE(edge_is_blue_for_parent(c.net->node(3), edge_msg(c, 3, 0)));
    CHECK_FALSE(edge_is_blue_for_parent(c.net->node(0), edge_msg(c, 3, 0)));
}

TEST_CASE("RING5 stores") {
    const Collected c = collect(ring5(), 0);
    // Only (2,3) is a non-tree edge; its common ancestor is the sink.
    CHECK(c.net->node(1).stores.children_green == std::map<NodeId, EdgeRecord>{{2, rec(2, 3, 1, 5)}});
    CHECK(c.net->node(4).stores.children_green == std::map<NodeId, EdgeRecord>{{3, rec(2, 3, 1, 5)}});
    for (NodeId v = 0; v < 5; ++v) CHECK(c.net->node(v).stores.parent_blue.empty());
    CHECK(c.stats.delivered_of(MessageKind::NonTreeEdge) == 4);
}

TEST_CASE("a tree-only graph collects nothing") {
    const Collected c = collect(generate_random_tree(15, 4), 3);
    CHECK(c.stats.delivered_of(MessageKind::NonTreeEdge) == 0);
    CHECK(c.stats.delivered_of(MessageKind::LabelNotice) == 0);
    for (NodeId v = 0; v < 15; ++v) CHECK(c.net->node(v).stores == EdgeStores{});
    CHECK(predicted_edge_messages(c.net->graph(), c.net->tree()) == 0);
}

TEST_CASE("stored edges minimize the per-child weights") {
    for (const auto& [g, sink] : small_corpus()) {
        const Collected c = collect(g, sink);
        const auto& tree = c.net->tree();
        const auto& parent = tree.parent;
        const std::vector<Cost> dist = brute_distances(g, sink);
        const std::size_t n = g.node_count();
        CAPTURE(n);
        CAPTURE(sink);

        for (NodeId x = 0; x < n; ++x) {
            const auto x_sub = subtree_of(parent, x);
            std::map<NodeId, EdgeRecord> expected_green;
            for (NodeId child : tree.children[x]) {
                const auto sub = subtree_of(parent, child);
                Best best;
                for (const Edge& e : g.edges()) {
                    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                        if (!sub.count(u) || x_sub.count(v)) continue;
                        // Climb from u to the child, cross, then the shortest way home.
                        best.offer(tree_distance(g, parent, u, child) + e.cost + dist[v], u, v);
                    }
                }
                if (!best.key) continue;
                const auto [w, u, v] = *best.key;
                const Cost c_uv = *g.edge_cost(u, v);
                expected_green[child] = EdgeRecord{u, v, c_uv, dist[u] + c_uv + dist[v]};
                CHECK(w + dist[child] == expected_green[child].fixed_green_weight);
            }
            CHECK(c.net->node(x).stores.children_green == expected_green);

            if (tree.is_root(x) || tree.is_root(parent[x])) {
                CHECK(c.net->node(x).stores.parent_blue.empty());
                continue;
            }
            std::map<NodeId, EdgeRecord> expected_blue;
            for (NodeId sib : tree.children[parent[x]]) {
                if (sib == x) continue;
                const auto sib_sub = subtree_of(parent, sib);
                Best best;
                for (const Edge& e : g.edges()) {
                    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                        if (!x_sub.count(u) || !sib_sub.count(v)) continue;
                        best.offer(tree_distance(g, parent, u, x) + e.cost + tree_distance(g, parent, v, sib), u, v);
                    }
                }
                if (!best.key) continue;
                const auto [w, u, v] = *best.key;
                const Cost c_uv = *g.edge_cost(u, v);
                expected_blue[sib] = EdgeRecord{u, v, c_uv, dist[u] + c_uv + dist[v]};
            }
            CHECK(c.net->node(x).stores.parent_blue == expected_blue);
        }
    }
}

TEST_CASE("store bounds and blue exclusivity") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Graph g = generate_biconnected(40, 3 + seed % 6, seed);
        const NodeId sink = static_cast<NodeId>(seed % 40);
        const Collected c = collect(g, sink);
        const auto& tree = c.net->tree();
        CAPTURE(seed);
        for (NodeId v = 0; v < 40; ++v) {
            const EdgeStores& st = c.net->node(v).stores;
            CHECK(st.children_green.size() <= tree.children[v].size());
            if (tree.is_root(v)) continue;
            CHECK(st.parent_blue.size() <= tree.children[tree.parent[v]].size() - 1);
            for (const auto& [sib, e] : st.parent_blue) {
                CHECK(tree.parent[sib] == tree.parent[v]);
                CHECK(walk_nca(tree.parent, e.u, e.v) == tree.parent[v]);
                const bool u_here = walk_is_ancestor(tree.parent, v, e.u);
                CHECK(walk_is_ancestor(tree.parent, u_here ? v : sib, e.u));
                CHECK(walk_is_ancestor(tree.parent, u_here ? sib : v, e.v));
                CHECK(c.net->node(sib).stores.parent_blue.at(v) == e);
            }
            for (const auto& [child, e] : st.children_green) {
                const bool u_below = walk_is_ancestor(tree.parent, child, e.u);
                CHECK(walk_is_ancestor(tree.parent, child, u_below ? e.u : e.v));
                CHECK_FALSE(walk_is_ancestor(tree.parent, v, u_below ? e.v : e.u));
            }
        }
    }
}

TEST_CASE("edge messages equal the hop-count prediction") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t n = 10 + seed * 3;
        const Graph g = generate_biconnected(n, 3 + seed % 8, seed);
        const NodeId sink = static_cast<NodeId>(seed * 7 % n);
        const Collected c = collect(g, sink);
        const auto& tree = c.net->tree();

        std::uint64_t walked = 0;
        for (const Edge& e : g.edges()) {
            if (is_tree_edge(tree, e.u, e.v)) continue;
            const NodeId nca = walk_nca(tree.parent, e.u, e.v);
            walked += hops(tree.parent, e.u, nca) + hops(tree.parent, e.v, nca);
        }
        CAPTURE(seed);
        CHECK(predicted_edge_messages(g, tree) == walked);
        CHECK(c.stats.delivered_of(MessageKind::NonTreeEdge) == walked);
        CHECK(c.stats.delivered_of(MessageKind::LabelNotice) == 2 * (g.edge_count() - (n - 1)));
        CHECK(c.stats.delivered_of(MessageKind::Collect) == n - 1);
    }
}

TEST_CASE("stores do not depend on delivery order or inbox bounds") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = generate_biconnected(35, 6, seed);
        const Collected plain = collect(g, 0);
        SimConfig bounded;
        bounded.inbox_capacity = 1;
        SimConfig shuffled;
        shuffled.shuffle_seed = seed;
        const Collected b = collect(g, 0, bounded);
        const Collected s = collect(g, 0, shuffled);
        CHECK(b.stats.retries > 0);
        for (NodeId v = 0; v < 35; ++v) {
            CHECK(b.net->node(v).stores == plain.net->node(v).stores);
            CHECK(s.net->node(v).stores == plain.net->node(v).stores);
        }
    }
}
