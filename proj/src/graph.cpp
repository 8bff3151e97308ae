#include "altroute/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace altroute {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

void Graph::check_node(NodeId node) const {
    if (node >= adjacency_.size()) {
        throw std::out_of_range("node id " + std::to_string(node) + " out of range");
    }
}

void Graph::add_edge(NodeId u, NodeId v, Cost cost) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (cost.is_negative() || cost.is_infinite()) {
        throw std::invalid_argument("edge cost must be finite and non-negative");
    }

    auto insert = [](std::vector<Neighbor>& list, NodeId other, Cost c) {
        auto it = std::lower_bound(list.begin(), list.end(), other,
                                   [](const Neighbor& nb, NodeId id) { return nb.node < id; });
        if (it != list.end() && it->node == other) {
            it->cost = std::min(it->cost, c);
            return false;
        }
        list.insert(it, Neighbor{other, c});
        return true;
    };
    bool fresh = insert(adjacency_[u], v, cost);
    insert(adjacency_[v], u, cost);
    if (fresh) ++edge_count_;
}

std::span<const Neighbor> Graph::neighbors(NodeId node) const {
    check_node(node);
    return adjacency_[node];
}

std::optional<Cost> Graph::edge_cost(NodeId u, NodeId v) const {
    if (u >= adjacency_.size() || v >= adjacency_.size()) return std::nullopt;
    const auto& list = adjacency_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& nb, NodeId id) { return nb.node < id; });
    if (it == list.end() || it->node != v) return std::nullopt;
    return it->cost;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (const Neighbor& nb : adjacency_[u]) {
            if (u < nb.node) out.push_back(Edge{u, nb.node, nb.cost});
        }
    }
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.node_count() == b.node_count() && a.edges() == b.edges();
}

bool ShortestPathTree::is_ancestor(NodeId ancestor, NodeId v) const {
    for (NodeId cur = v; cur != kNoNode; cur = parent[cur]) {
        if (cur == ancestor) return true;
    }
    return false;
}

ShortestPathTree dijkstra_spt(const Graph& graph, NodeId sink) {
    const std::size_t n = graph.node_count();
    if (sink >= n) throw std::out_of_range("sink out of range");

    ShortestPathTree tree;
    tree.root = sink;
    tree.parent.assign(n, kNoNode);
    tree.parent_cost.assign(n, Cost{});
    tree.dist.assign(n, Cost::infinity());
    tree.depth.assign(n, 0);
    tree.children.assign(n, {});

    std::vector<bool> settled(n, false);
    using Entry = std::pair<Cost, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    tree.dist[sink] = Cost{};
    queue.emplace(Cost{}, sink);

    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (settled[u] || d != tree.dist[u]) continue;
        settled[u] = true;
        for (const Neighbor& nb : graph.neighbors(u)) {
            if (settled[nb.node]) continue;
            Cost candidate = d + nb.cost;
            Cost& best = tree.dist[nb.node];
            if (candidate < best || (candidate == best && u < tree.parent[nb.node])) {
                bool improved = candidate < best;
                best = candidate;
                tree.parent[nb.node] = u;
                tree.parent_cost[nb.node] = nb.cost;
                if (improved) queue.emplace(candidate, nb.node);
            }
        }
    }

    for (NodeId v = 0; v < n; ++v) {
        if (!settled[v]) throw std::runtime_error("graph disconnected");
        if (v != sink) tree.children[tree.parent[v]].push_back(v);
    }
    // Children were appended in ascending v already; depth needs parents first.
    std::vector<NodeId> order{sink};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (NodeId c : tree.children[order[i]]) {
            tree.depth[c] = tree.depth[order[i]] + 1;
            order.push_back(c);
        }
    }
    return tree;
}

bool is_biconnected(const Graph& graph) {
    const std::size_t n = graph.node_count();
    if (n < 3) throw std::invalid_argument("too small");

    std::vector<std::size_t> discovery(n, 0), low(n, 0);
    std::vector<NodeId> parent(n, kNoNode);
    std::size_t timer = 0;

    struct Frame {
        NodeId node;
        std::size_t next;
    };
    std::vector<Frame> stack{{0, 0}};
    discovery[0] = low[0] = ++timer;
    std::size_t root_children = 0;

    while (!stack.empty()) {
        Frame& frame = stack.back();
        auto nbs = graph.neighbors(frame.node);
        if (frame.next < nbs.size()) {
            NodeId w = nbs[frame.next++].node;
            if (discovery[w] == 0) {
                parent[w] = frame.node;
                discovery[w] = low[w] = ++timer;
                if (frame.node == 0) ++root_children;
                stack.push_back({w, 0});
            } else if (w != parent[frame.node]) {
                low[frame.node] = std::min(low[frame.node], discovery[w]);
            }
            continue;
        }
        NodeId v = frame.node;
        stack.pop_back();
        if (stack.empty()) break;
        NodeId p = stack.back().node;
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= discovery[p]) return false;
    }

    if (timer != n) return false;  // disconnected
    return root_children <= 1;
}

namespace {

Cost draw_cost(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(1, 100);
    return Cost::whole(dist(rng));
}

}  // namespace

Graph generate_biconnected(std::size_t n, double avg_degree, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("too small");
    if (!(avg_degree >= 2.0)) throw std::invalid_argument("average degree must be at least 2");
    const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree / 2.0));
    const std::size_t max_edges = n * (n - 1) / 2;
    if (target > max_edges) {
        throw std::invalid_argument("average degree " + std::to_string(avg_degree) + " impossible for " +
                                    std::to_string(n) + " nodes");
    }

    std::mt19937_64 rng(seed);
    Graph graph(n);

    std::vector<NodeId> ring(n);
    for (NodeId i = 0; i < n; ++i) ring[i] = i;
    std::shuffle(ring.begin(), ring.end(), rng);
    for (std::size_t i = 0; i < n; ++i) graph.add_edge(ring[i], ring[(i + 1) % n], draw_cost(rng));

    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    while (graph.edge_count() < target) {
        NodeId u = pick(rng);
        NodeId v = pick(rng);
        if (u == v || graph.has_edge(u, v)) continue;
        graph.add_edge(u, v, draw_cost(rng));
    }
    return graph;
}

Graph generate_random_tree(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph graph(n);
    for (NodeId v = 1; v < n; ++v) {
        std::uniform_int_distribution<NodeId> pick(0, v - 1);
        NodeId p = pick(rng);
        graph.add_edge(p, v, draw_cost(rng));
    }
    return graph;
}

std::vector<NodeId> tree_path(const ShortestPathTree& tree, NodeId u, NodeId ancestor) {
    std::vector<NodeId> path;
    for (NodeId cur = u; cur != kNoNode; cur = tree.parent[cur]) {
        path.push_back(cur);
        if (cur == ancestor) return path;
    }
    throw std::invalid_argument("node " + std::to_string(ancestor) + " is not an ancestor of " +
                                std::to_string(u));
}

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&](std::istringstream& fields) {
        while (std::getline(in, line)) {
            ++line_no;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            fields = std::istringstream(line);
            return true;
        }
        return false;
    };
    auto error = [&](const std::string& what) {
        return std::runtime_error("graph line " + std::to_string(line_no) + ": " + what);
    };

    std::istringstream fields;
    if (!next_line(fields)) throw std::runtime_error("graph file is empty");
    std::size_t n = 0, m = 0;
    if (!(fields >> n >> m)) throw error("expected header 'n m'");

    Graph graph(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!next_line(fields)) throw error("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        long long u = -1, v = -1;
        std::string cost_text;
        if (!(fields >> u >> v >> cost_text) || u < 0 || v < 0) throw error("expected 'u v cost'");
        try {
            graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), Cost::parse(cost_text));
        } catch (const std::exception& ex) {
            throw error(ex.what());
        }
    }
    if (next_line(fields)) throw error("trailing content after edge list");
    return graph;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
    out << graph.node_count() << ' ' << graph.edge_count() << '\n';
    for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.cost.to_string() << '\n';
}

}  // namespace altroute
