#pragma once

#include "altroute/cost.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace altroute {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Undirected edge, always stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    Cost cost;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    NodeId node = 0;
    Cost cost;
};

/// Simple undirected graph with non-negative costs on nodes 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count);

    /// Adds {u, v}. A duplicate pair keeps the cheaper cost. Self-loops,
    /// unknown ids and negative or infinite costs are rejected.
    void add_edge(NodeId u, NodeId v, Cost cost);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Neighbors of `node`, ascending by id.
    std::span<const Neighbor> neighbors(NodeId node) const;
    std::optional<Cost> edge_cost(NodeId u, NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const { return edge_cost(u, v).has_value(); }

    /// All edges sorted by (u, v).
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    void check_node(NodeId node) const;

    std::vector<std::vector<Neighbor>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Shortest-paths tree toward a sink. parent[root] == kNoNode.
struct ShortestPathTree {
    NodeId root = 0;
    std::vector<NodeId> parent;
    std::vector<Cost> parent_cost;
    std::vector<Cost> dist;
    std::vector<std::size_t> depth;
    std::vector<std::vector<NodeId>> children;  // ascending ids

    std::size_t node_count() const { return parent.size(); }
    bool is_root(NodeId v) const { return v == root; }
    /// Walks parent pointers; reflexive.
    bool is_ancestor(NodeId ancestor, NodeId v) const;
};

/// Dijkstra from `sink`. Equal-distance parents resolve to the smaller id.
/// Throws std::runtime_error("graph disconnected") if some node is unreachable.
ShortestPathTree dijkstra_spt(const Graph& graph, NodeId sink);

/// Lowpoint DFS; true iff connected and free of articulation points.
/// Throws std::invalid_argument("too small") for fewer than three nodes.
bool is_biconnected(const Graph& graph);

/// Random Hamiltonian cycle plus uniformly drawn chords until the edge count
/// reaches round(n * avg_degree / 2). Costs are integers drawn uniformly from
/// [1, 100]. Same arguments, same graph.
Graph generate_biconnected(std::size_t n, double avg_degree, std::uint64_t seed);

/// Random labelled tree: node i > 0 attaches to a uniform earlier node.
Graph generate_random_tree(std::size_t n, std::uint64_t seed);

/// Nodes u, parent(u), ..., ancestor. Throws if `ancestor` is not above `u`.
std::vector<NodeId> tree_path(const ShortestPathTree& tree, NodeId u, NodeId ancestor);

/// Plain-text graph format: "n m", then m lines "u v cost"; '#' lines are comments.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

}  // namespace altroute
