#include "altroute/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>

namespace altroute {

namespace {

struct Reach {
    std::vector<Cost> dist;
    std::vector<NodeId> toward_source;
};

/// Plain Dijkstra from `source` skipping one node and/or one link.
Reach restricted_dijkstra(const Graph& graph, NodeId source, NodeId banned_node, std::pair<NodeId, NodeId> banned_link) {
    const std::size_t n = graph.node_count();
    Reach r{std::vector<Cost>(n, Cost::infinity()), std::vector<NodeId>(n, kNoNode)};
    auto banned = [&](NodeId a, NodeId b) {
        return (a == banned_link.first && b == banned_link.second) || (a == banned_link.second && b == banned_link.first);
    };
    using Entry = std::pair<Cost, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    r.dist[source] = Cost{};
    queue.emplace(Cost{}, source);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d != r.dist[u]) continue;
        for (const Neighbor& nb : graph.neighbors(u)) {
            if (nb.node == banned_node || banned(u, nb.node)) continue;
            Cost candidate = d + nb.cost;
            if (candidate < r.dist[nb.node]) {
                r.dist[nb.node] = candidate;
                r.toward_source[nb.node] = u;
                queue.emplace(candidate, nb.node);
            }
        }
    }
    return r;
}

AlternatePath path_from(const Reach& r, NodeId start, NodeId sink) {
    if (r.dist[start].is_infinite()) {
        throw std::runtime_error("no alternate path from " + std::to_string(start) + " to " + std::to_string(sink));
    }
    AlternatePath out{r.dist[start], {start}};
    for (NodeId cur = start; cur != sink;) {
        cur = r.toward_source[cur];
        out.path.push_back(cur);
    }
    return out;
}

constexpr std::pair<NodeId, NodeId> kNoLink{kNoNode, kNoNode};

bool is_tree_edge(const ShortestPathTree& tree, const Edge& e) {
    return tree.parent[e.u] == e.v || tree.parent[e.v] == e.u;
}

EdgeRecord record_of(const Edge& e, const ShortestPathTree& tree) {
    return EdgeRecord{e.u, e.v, e.cost, tree.dist[e.u] + e.cost + tree.dist[e.v]};
}

/// Candidate arc of a recovery graph: its weight and the edge behind it.
struct Arc {
    Cost weight;
    EdgeRecord edge;
};

bool better_arc(const Arc& a, const Arc& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return std::pair{a.edge.u, a.edge.v} < std::pair{b.edge.u, b.edge.v};
}

void keep_better(std::map<NodeId, Arc>& store, NodeId key, const Arc& arc) {
    auto [it, inserted] = store.try_emplace(key, arc);
    if (!inserted && better_arc(arc, it->second)) it->second = arc;
}

void keep_better(std::map<std::pair<NodeId, NodeId>, Arc>& store, std::pair<NodeId, NodeId> key, const Arc& arc) {
    auto [it, inserted] = store.try_emplace(key, arc);
    if (!inserted && better_arc(arc, it->second)) it->second = arc;
}

}  // namespace

AlternatePath optimal_alternate(const Graph& graph, NodeId sink, NodeId failed, NodeId child) {
    if (failed == sink) throw std::invalid_argument("sink cannot fail");
    if (child == failed) throw std::invalid_argument("child cannot be the failed node");
    return path_from(restricted_dijkstra(graph, sink, failed, kNoLink), child, sink);
}

AlternatePath optimal_link_alternate(const Graph& graph, NodeId sink, NodeId node, NodeId parent) {
    return path_from(restricted_dijkstra(graph, sink, kNoNode, {node, parent}), node, sink);
}

DfsLabels centralized_dfs_labels(const ShortestPathTree& tree) {
    DfsLabels labels;
    labels.of.assign(tree.node_count(), Interval{});
    std::uint32_t counter = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root, 0}};
    labels.of[tree.root].start = ++counter;
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < tree.children[node].size()) {
            NodeId c = tree.children[node][next++];
            labels.of[c].start = ++counter;
            stack.emplace_back(c, 0);
        } else {
            labels.of[node].end = ++counter;
            stack.pop_back();
        }
    }
    return labels;
}

std::vector<RecoveryTable> centralized_snfr(const Graph& graph, NodeId sink) {
    const ShortestPathTree tree = dijkstra_spt(graph, sink);
    const DfsLabels labels = centralized_dfs_labels(tree);
    const std::size_t n = graph.node_count();
    const auto& dist = tree.dist;

    // green[z][c]: best edge from c's subtree to outside z's subtree, weighed from c.
    // blue[w][(a, b)]: best edge between the subtrees of children a < b of w, weighed a to b.
    std::vector<std::map<NodeId, Arc>> green(n);
    std::vector<std::map<std::pair<NodeId, NodeId>, Arc>> blue(n);

    for (const Edge& e : graph.edges()) {
        if (is_tree_edge(tree, e)) continue;
        const EdgeRecord rec = record_of(e, tree);

        NodeId nca = e.u;
        while (!is_descendant(labels, e.v, nca)) nca = tree.parent[nca];

        std::pair<NodeId, NodeId> below_nca{kNoNode, kNoNode};
        for (int side = 0; side < 2; ++side) {
            const NodeId near = side == 0 ? e.u : e.v;
            const NodeId far = side == 0 ? e.v : e.u;
            if (near == nca) continue;
            NodeId below = near;
            for (NodeId z = tree.parent[near]; z != nca; below = z, z = tree.parent[z]) {
                // greenWeight = d(below, near) + cost + d(far, s)
                keep_better(green[z], below, Arc{(dist[near] - dist[below]) + e.cost + dist[far], rec});
            }
            (side == 0 ? below_nca.first : below_nca.second) = below;
        }
        if (e.u != nca && e.v != nca && nca != sink) {
            auto [a, b] = below_nca;
            NodeId pa = e.u, pb = e.v;
            if (a > b) {
                std::swap(a, b);
                std::swap(pa, pb);
            }
            // blueWeight = d(a, pa) + cost + d(pb, b)
            keep_better(blue[nca], {a, b}, Arc{(dist[pa] - dist[a]) + e.cost + (dist[pb] - dist[b]), rec});
        }
    }

    std::vector<RecoveryTable> tables;
    for (NodeId x = 0; x < n; ++x) {
        if (x == sink) continue;
        const auto& kids = tree.children[x];
        const std::size_t k = kids.size();
        auto slot_of = [&kids](NodeId c) {
            return static_cast<std::size_t>(std::lower_bound(kids.begin(), kids.end(), c) - kids.begin());
        };

        std::vector<std::vector<std::pair<std::size_t, const Arc*>>> adjacent(k);
        for (const auto& [pair, arc] : blue[x]) {
            adjacent[slot_of(pair.first)].emplace_back(slot_of(pair.second), &arc);
            adjacent[slot_of(pair.second)].emplace_back(slot_of(pair.first), &arc);
        }

        struct Pred {
            WitnessColor color;
            std::size_t from;
            EdgeRecord edge;
        };
        std::vector<Cost> best(k, Cost::infinity());
        std::vector<std::optional<Pred>> pred(k);
        std::vector<bool> done(k, false);
        using Entry = std::pair<Cost, std::size_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        for (std::size_t i = 0; i < k; ++i) {
            auto g = green[x].find(kids[i]);
            if (g != green[x].end()) {
                best[i] = g->second.weight;
                pred[i] = Pred{WitnessColor::Green, i, g->second.edge};
            }
            queue.emplace(best[i], i);
        }
        while (!queue.empty()) {
            auto [d, i] = queue.top();
            queue.pop();
            if (done[i] || d != best[i]) continue;
            if (d.is_infinite()) throw std::runtime_error("graph not biconnected for " + std::to_string(x));
            done[i] = true;
            for (auto [j, arc] : adjacent[i]) {
                if (done[j]) continue;
                Cost candidate = d + arc->weight;
                if (candidate < best[j]) {
                    best[j] = candidate;
                    pred[j] = Pred{WitnessColor::Blue, i, arc->edge};
                    queue.emplace(candidate, j);
                }
            }
        }

        RecoveryTable table;
        table.failed = x;
        for (std::size_t i = 0; i < k; ++i) {
            RecoveryEntry entry;
            entry.child = kids[i];
            entry.cost = best[i];
            for (std::size_t cur = i;;) {
                entry.hop_chain.push_back(Witness{pred[cur]->color, pred[cur]->edge});
                if (pred[cur]->color == WitnessColor::Green) break;
                cur = pred[cur]->from;
            }
            entry.path = expand_path(tree, labels, x, entry.child, entry.hop_chain);
            table.entries.push_back(std::move(entry));
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

std::vector<LinkRecovery> centralized_link_recovery(const Graph& graph, NodeId sink) {
    const ShortestPathTree tree = dijkstra_spt(graph, sink);
    const DfsLabels labels = centralized_dfs_labels(tree);
    const auto edges = graph.edges();

    std::vector<LinkRecovery> out;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (v == sink) continue;
        std::optional<Arc> best;
        for (const Edge& e : edges) {
            if (is_tree_edge(tree, e)) continue;
            const bool u_in = is_descendant(labels, e.u, v);
            const bool w_in = is_descendant(labels, e.v, v);
            if (u_in == w_in) continue;
            const NodeId inside = u_in ? e.u : e.v;
            const NodeId outside = u_in ? e.v : e.u;
            Arc arc{(tree.dist[inside] - tree.dist[v]) + e.cost + tree.dist[outside], record_of(e, tree)};
            if (!best || better_arc(arc, *best)) best = arc;
        }
        if (!best) throw std::runtime_error("bridge edge");
        LinkRecovery link;
        link.node = v;
        link.parent = tree.parent[v];
        link.cost = best->weight;
        link.edge = best->edge;
        link.path = expand_link_path(tree, labels, v, best->edge);
        out.push_back(std::move(link));
    }
    return out;
}

namespace {

std::optional<std::string> check_walk(const Graph& graph, const std::vector<NodeId>& path, NodeId start, NodeId sink,
                                      Cost expected, const std::function<bool(NodeId, NodeId)>& forbidden) {
    if (path.empty()) return "empty path";
    if (path.front() != start) return "path starts at " + std::to_string(path.front());
    if (path.back() != sink) return "path ends at " + std::to_string(path.back());
    Cost total;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const NodeId a = path[i], b = path[i + 1];
        if (forbidden(a, b)) return "path uses forbidden link (" + std::to_string(a) + "," + std::to_string(b) + ")";
        auto c = graph.edge_cost(a, b);
        if (!c) return "path uses missing link (" + std::to_string(a) + "," + std::to_string(b) + ")";
        total += *c;
    }
    if (total != expected) return "path cost " + total.to_string() + " != recorded " + expected.to_string();
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_recovery_entry(const Graph& graph, NodeId sink, NodeId failed,
                                                const RecoveryEntry& entry) {
    if (entry.hop_chain.empty() || entry.hop_chain.back().color != WitnessColor::Green) {
        return "hop chain does not end with a green witness";
    }
    for (std::size_t i = 0; i + 1 < entry.hop_chain.size(); ++i) {
        if (entry.hop_chain[i].color != WitnessColor::Blue) return "green witness before the end of the hop chain";
    }
    for (NodeId v : entry.path) {
        if (v == failed) return "path visits the failed node";
    }
    return check_walk(graph, entry.path, entry.child, sink, entry.cost,
                      [failed](NodeId a, NodeId b) { return a == failed || b == failed; });
}

std::optional<std::string> check_link_recovery(const Graph& graph, NodeId sink, const LinkRecovery& link) {
    return check_walk(graph, link.path, link.node, sink, link.cost, [&link](NodeId a, NodeId b) {
        return (a == link.node && b == link.parent) || (a == link.parent && b == link.node);
    });
}

StretchReport stretch_report(const Graph& graph, NodeId sink, const std::vector<RecoveryTable>& tables) {
    StretchReport report;
    double sum = 0.0;
    for (const RecoveryTable& table : tables) {
        if (table.entries.empty()) continue;
        const Reach reach = restricted_dijkstra(graph, sink, table.failed, kNoLink);
        for (const RecoveryEntry& e : table.entries) {
            StretchEntry s;
            s.failed = table.failed;
            s.child = e.child;
            s.optimal = reach.dist[e.child];
            if (s.optimal.is_infinite()) throw std::runtime_error("no alternate path for " + std::to_string(e.child));
            s.protocol = e.cost;
            s.ratio = s.optimal.units() == 0 ? (s.protocol.units() == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                                             : s.protocol.to_double() / s.optimal.to_double();
            sum += s.ratio;
            report.entries.push_back(s);
        }
    }
    if (!report.entries.empty()) {
        report.mean = sum / static_cast<double>(report.entries.size());
        report.max = 0.0;
        for (const auto& s : report.entries) report.max = std::max(report.max, s.ratio);
    }
    return report;
}

}  // namespace altroute
