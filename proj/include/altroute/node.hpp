#pragma once

#include "altroute/dfs_labeling.hpp"
#include "altroute/edge_propagation.hpp"
#include "altroute/graph.hpp"
#include "altroute/recovery.hpp"
#include "altroute/sim.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace altroute {

/// A non-tree neighbor and its distance to the sink, known from routing.
struct PeerLink {
    NodeId node = 0;
    Cost cost;
    Cost dist;
};

/// What a router knows locally once the shortest-paths tree is installed.
struct NodeSetup {
    NodeId id = 0;
    NodeId parent = kNoNode;
    bool parent_is_root = false;
    Cost parent_cost;
    Cost dist;
    std::vector<Neighbor> children;  // ascending id
    std::vector<PeerLink> peers;     // ascending id
};

NodeSetup make_node_setup(const Graph& graph, const ShortestPathTree& tree, NodeId id);

class NodeActor final : public Actor {
public:
    explicit NodeActor(NodeSetup setup);

    void receive(SimNetwork& net, const Message& msg) override;

    NodeId id() const { return setup_.id; }
    bool is_root() const { return setup_.parent == kNoNode; }
    const NodeSetup& setup() const { return setup_; }
    std::size_t child_count() const { return setup_.children.size(); }
    std::optional<std::size_t> child_slot(NodeId child) const;

    LabelState labels;
    CollectState collect;
    EdgeStores stores;
    RecoverySession recovery;
    /// Blue replies received outside a recovery session, by child.
    std::map<NodeId, std::vector<BlueEntry>> inspected_blue;

private:
    NodeSetup setup_;
};

/// One NodeActor per graph node on a shared simulator, with the tree installed.
class RouterNetwork {
public:
    RouterNetwork(Graph graph, ShortestPathTree tree, SimConfig config = {});

    RouterNetwork(const RouterNetwork&) = delete;
    RouterNetwork& operator=(const RouterNetwork&) = delete;

    SimNetwork& sim() { return *sim_; }
    const Graph& graph() const { return graph_; }
    const ShortestPathTree& tree() const { return tree_; }
    NodeId root() const { return tree_.root; }
    std::size_t size() const { return nodes_.size(); }

    NodeActor& node(NodeId id) { return *nodes_.at(id); }
    const NodeActor& node(NodeId id) const { return *nodes_.at(id); }

private:
    Graph graph_;
    ShortestPathTree tree_;
    std::unique_ptr<SimNetwork> sim_;
    std::vector<std::unique_ptr<NodeActor>> nodes_;
};

}  // namespace altroute
