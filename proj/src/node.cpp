#include "altroute/node.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace altroute {

NodeSetup make_node_setup(const Graph& graph, const ShortestPathTree& tree, NodeId id) {
    NodeSetup setup;
    setup.id = id;
    setup.parent = tree.parent[id];
    setup.parent_cost = tree.parent_cost[id];
    setup.dist = tree.dist[id];
    setup.parent_is_root = setup.parent != kNoNode && setup.parent == tree.root;
    for (NodeId c : tree.children[id]) setup.children.push_back(Neighbor{c, tree.parent_cost[c]});
    for (const Neighbor& nb : graph.neighbors(id)) {
        if (nb.node == setup.parent || tree.parent[nb.node] == id) continue;
        setup.peers.push_back(PeerLink{nb.node, nb.cost, tree.dist[nb.node]});
    }
    return setup;
}

NodeActor::NodeActor(NodeSetup setup) : setup_(std::move(setup)) {
    labels.child_sizes.assign(setup_.children.size(), 0);
    collect.peer_labels.assign(setup_.peers.size(), std::nullopt);
}

std::optional<std::size_t> NodeActor::child_slot(NodeId child) const {
    const auto& cs = setup_.children;
    auto it = std::lower_bound(cs.begin(), cs.end(), child, [](const Neighbor& nb, NodeId id) { return nb.node < id; });
    if (it == cs.end() || it->node != child) return std::nullopt;
    return static_cast<std::size_t>(it - cs.begin());
}

void NodeActor::receive(SimNetwork& net, const Message& msg) {
    switch (msg.kind) {
        case MessageKind::Wake:
            on_wake(*this, net);
            break;
        case MessageKind::Count:
            on_count(*this, net, msg);
            break;
        case MessageKind::Allocate:
            on_allocate(*this, net, msg);
            break;
        case MessageKind::Collect:
            on_collect(*this, net);
            break;
        case MessageKind::LabelNotice:
            on_label_notice(*this, net, msg);
            break;
        case MessageKind::NonTreeEdge:
            record_non_tree_edge(*this, net, std::get<NonTreeEdgeMsg>(msg.payload));
            break;
        case MessageKind::BlueFetch:
            on_blue_fetch(*this, net, msg);
            break;
        case MessageKind::BlueReply:
            on_blue_reply(*this, net, msg);
            break;
    }
}

RouterNetwork::RouterNetwork(Graph graph, ShortestPathTree tree, SimConfig config)
    : graph_(std::move(graph)), tree_(std::move(tree)) {
    if (tree_.node_count() != graph_.node_count()) throw std::invalid_argument("tree does not span the graph");
    sim_ = std::make_unique<SimNetwork>(graph_, config);
    nodes_.reserve(graph_.node_count());
    for (NodeId v = 0; v < graph_.node_count(); ++v) {
        nodes_.push_back(std::make_unique<NodeActor>(make_node_setup(graph_, tree_, v)));
        sim_->attach(v, *nodes_.back());
    }
}

}  // namespace altroute
