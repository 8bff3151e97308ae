#pragma once

#include "altroute/graph.hpp"
#include "altroute/messages.hpp"
#include "altroute/sim.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace altroute {

class NodeActor;
class RouterNetwork;

/// Per-node results of non-tree edge collection.
///
/// parent_blue: per sibling, the preferred edge between this subtree and
/// that sibling's subtree (blue in the parent's recovery graph).
/// children_green: per child, the preferred edge leaving that child's subtree
/// for somewhere outside this node's subtree (green in this node's graph).
struct EdgeStores {
    std::map<NodeId, EdgeRecord> parent_blue;
    std::map<NodeId, EdgeRecord> children_green;

    friend bool operator==(const EdgeStores&, const EdgeStores&) = default;
};

struct CollectState {
    bool triggered = false;
    std::vector<std::optional<Interval>> peer_labels;  // parallel to the node's peers
};

/// d(s, u) + cost(u, v) + d(v, s).
inline Cost fixed_green_weight(Cost dist_u, Cost cost, Cost dist_v) { return dist_u + cost + dist_v; }
Cost fixed_green_weight(const Edge& edge, std::span<const Cost> dist);

/// Exactly one endpoint inside this node's subtree, the other inside the
/// parent's subtree but neither in this subtree nor the parent itself.
bool edge_is_blue_for_parent(const NodeActor& node, const NonTreeEdgeMsg& msg);

/// Classifies one edge at `node` and forwards it upward unless both endpoints
/// are descendants. msg.sender == node id marks the node's own edge.
void record_non_tree_edge(NodeActor& node, SimNetwork& net, NonTreeEdgeMsg msg);

void on_collect(NodeActor& node, SimNetwork& net);
void on_label_notice(NodeActor& node, SimNetwork& net, const Message& msg);

/// Root asks its subtree to collect; every node swaps labels with its
/// non-tree neighbors and then processes its own non-tree edges.
SimStats collect_non_tree_edges(RouterNetwork& net);

/// Sum over non-tree edges of tree hops from both endpoints to their
/// nearest common ancestor: the exact edge-message count of the collection.
std::uint64_t predicted_edge_messages(const Graph& graph, const ShortestPathTree& tree);

}  // namespace altroute
