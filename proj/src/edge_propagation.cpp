#include "altroute/edge_propagation.hpp"

#include "altroute/node.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>

namespace altroute {

Cost fixed_green_weight(const Edge& edge, std::span<const Cost> dist) {
    return fixed_green_weight(dist[edge.u], edge.cost, dist[edge.v]);
}

namespace {

EdgeRecord record_of(const NonTreeEdgeMsg& msg) { return EdgeRecord{msg.p1, msg.p2, msg.cost, msg.fixed_green_weight}; }

void keep_preferred(std::map<NodeId, EdgeRecord>& store, NodeId key, const EdgeRecord& candidate) {
    auto [it, inserted] = store.try_emplace(key, candidate);
    if (!inserted && preferred(candidate, it->second)) it->second = candidate;
}

}  // namespace

bool edge_is_blue_for_parent(const NodeActor& node, const NonTreeEdgeMsg& msg) {
    if (node.is_root()) return false;
    const LabelState& st = node.labels;
    if (!st.own || !st.parent) throw std::logic_error("labels not installed at node " + std::to_string(node.id()));

    const bool in1 = is_descendant(msg.p1_labels, *st.own);
    const bool in2 = is_descendant(msg.p2_labels, *st.own);
    if (in1 == in2) return false;

    const NodeId outside = in1 ? msg.p2 : msg.p1;
    const Interval outside_labels = in1 ? msg.p2_labels : msg.p1_labels;
    return outside != node.setup().parent && is_descendant(outside_labels, *st.parent);
}

void record_non_tree_edge(NodeActor& node, SimNetwork& net, NonTreeEdgeMsg msg) {
    const LabelState& st = node.labels;
    if (!st.own) throw std::logic_error("labels not installed at node " + std::to_string(node.id()));

    const bool in1 = is_descendant(msg.p1_labels, *st.own);
    const bool in2 = is_descendant(msg.p2_labels, *st.own);
    if (in1 && in2) return;  // red for the parent, or this node is the nearest common ancestor

    const EdgeRecord edge = record_of(msg);
    if (msg.sender != node.id()) {
        if (!node.child_slot(msg.sender)) {
            throw std::logic_error("edge forwarded by non-child " + std::to_string(msg.sender));
        }
        keep_preferred(node.stores.children_green, msg.sender, edge);
    }

    // The sink's recovery graph is undefined, so its children keep no blue edges.
    if (!node.setup().parent_is_root && edge_is_blue_for_parent(node, msg)) {
        const Interval outside = in1 ? msg.p2_labels : msg.p1_labels;
        auto sibling = std::find_if(st.siblings.begin(), st.siblings.end(),
                                    [&](const auto& entry) { return is_descendant(outside, entry.second); });
        if (sibling == st.siblings.end()) throw std::runtime_error("label inconsistency");
        keep_preferred(node.stores.parent_blue, sibling->first, edge);
    }

    if (node.is_root()) return;
    msg.sender = node.id();
    net.send(Message{node.id(), node.setup().parent, MessageKind::NonTreeEdge, msg, false});
}

void on_collect(NodeActor& node, SimNetwork& net) {
    if (node.collect.triggered) return;
    if (!node.labels.own) throw std::logic_error("labels not installed at node " + std::to_string(node.id()));
    node.collect.triggered = true;
    for (const Neighbor& c : node.setup().children) {
        net.send(Message{node.id(), c.node, MessageKind::Collect, std::monostate{}, false});
    }
    for (const PeerLink& peer : node.setup().peers) {
        net.send(Message{node.id(), peer.node, MessageKind::LabelNotice, LabelNoticePayload{*node.labels.own}, false});
    }
}

void on_label_notice(NodeActor& node, SimNetwork& net, const Message& msg) {
    const auto& peers = node.setup().peers;
    auto it = std::lower_bound(peers.begin(), peers.end(), msg.from,
                               [](const PeerLink& p, NodeId id) { return p.node < id; });
    if (it == peers.end() || it->node != msg.from) {
        throw std::logic_error("label notice from non-peer " + std::to_string(msg.from));
    }
    const Interval peer_labels = std::get<LabelNoticePayload>(msg.payload).labels;
    node.collect.peer_labels[static_cast<std::size_t>(it - peers.begin())] = peer_labels;
    if (!node.labels.own) throw std::logic_error("labels not installed at node " + std::to_string(node.id()));

    NonTreeEdgeMsg own;
    const bool self_first = node.id() < it->node;
    own.p1 = self_first ? node.id() : it->node;
    own.p2 = self_first ? it->node : node.id();
    own.p1_labels = self_first ? *node.labels.own : peer_labels;
    own.p2_labels = self_first ? peer_labels : *node.labels.own;
    own.cost = it->cost;
    own.fixed_green_weight = fixed_green_weight(node.setup().dist, it->cost, it->dist);
    own.sender = node.id();
    record_non_tree_edge(node, net, own);
}

SimStats collect_non_tree_edges(RouterNetwork& net) {
    on_collect(net.node(net.root()), net.sim());
    return net.sim().run_until_quiescent();
}

std::uint64_t predicted_edge_messages(const Graph& graph, const ShortestPathTree& tree) {
    std::uint64_t total = 0;
    for (const Edge& e : graph.edges()) {
        if (tree.parent[e.u] == e.v || tree.parent[e.v] == e.u) continue;
        NodeId a = e.u, b = e.v;
        while (tree.depth[a] > tree.depth[b]) a = tree.parent[a];
        while (tree.depth[b] > tree.depth[a]) b = tree.parent[b];
        while (a != b) {
            a = tree.parent[a];
            b = tree.parent[b];
        }
        total += tree.depth[e.u] + tree.depth[e.v] - 2 * tree.depth[a];
    }
    return total;
}

}  // namespace altroute
