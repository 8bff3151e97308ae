#pragma once

#include "altroute/graph.hpp"
#include "altroute/labels.hpp"
#include "altroute/messages.hpp"
#include "altroute/sim.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace altroute {

class NodeActor;
class RouterNetwork;

enum class WitnessColor : std::uint8_t { Blue, Green };

struct Witness {
    WitnessColor color = WitnessColor::Green;
    EdgeRecord edge;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Route for one child of a failed node: blue hops between sibling subtrees,
/// then one green edge out, expanded into a walk in the physical graph.
struct RecoveryEntry {
    NodeId child = 0;
    Cost cost;
    std::vector<Witness> hop_chain;
    std::vector<NodeId> path;

    friend bool operator==(const RecoveryEntry&, const RecoveryEntry&) = default;
};

struct RecoveryTable {
    NodeId failed = 0;
    std::vector<RecoveryEntry> entries;  // ascending child id

    friend bool operator==(const RecoveryTable&, const RecoveryTable&) = default;
};

/// Counters for one recovery computation at a failed node.
struct RecoveryWork {
    std::size_t extract_min = 0;
    std::size_t blue_fetches = 0;
    std::size_t relaxations = 0;
    std::vector<NodeId> fetched;  // children queried, in query order
};

/// Incremental Dijkstra over the failed node's recovery graph. Slot i stands
/// for the i-th child; blue arcs arrive only when a child is settled.
struct RecoverySession {
    enum class Status : std::uint8_t { Idle, Running, Done, Failed };

    struct Via {
        WitnessColor color = WitnessColor::Green;
        std::size_t from = 0;  // slot reached through, blue only
        EdgeRecord edge;
    };

    Status status = Status::Idle;
    std::vector<Cost> best;
    std::vector<bool> settled;
    std::vector<std::optional<Via>> via;
    std::priority_queue<std::pair<Cost, std::size_t>, std::vector<std::pair<Cost, std::size_t>>, std::greater<>>
        candidates;
    std::size_t settled_count = 0;
    std::optional<std::size_t> awaiting;
    RecoveryWork work;
    std::string error;
};

struct RecoveryResult {
    RecoveryTable table;
    RecoveryWork work;
};

/// Route after the tree link (node, parent(node)) fails.
struct LinkRecovery {
    NodeId node = 0;
    NodeId parent = 0;
    Cost cost;
    EdgeRecord edge;
    std::vector<NodeId> path;

    friend bool operator==(const LinkRecovery&, const LinkRecovery&) = default;
};

/// fgw - (2 d(s, w) + cost(w, w_u) + cost(w, w_v)).
/// Throws std::runtime_error("weight inconsistency") on a negative result.
Cost blue_weight_from_green(Cost fixed_green_weight, Cost dist_w, Cost cost_w_wu, Cost cost_w_wv);

void start_recovery(NodeActor& node, SimNetwork& net);
void on_blue_fetch(NodeActor& node, SimNetwork& net, const Message& msg);
void on_blue_reply(NodeActor& node, SimNetwork& net, const Message& msg);

/// Runs the recovery conversation at `failed` to quiescence.
/// Throws std::invalid_argument("sink cannot fail") for the sink and
/// std::runtime_error("graph not biconnected for x") if a child is unreachable.
RecoveryResult compute_recovery(RouterNetwork& net, NodeId failed);

/// Every non-sink node runs its conversation concurrently in one simulation.
/// Results ascend by failed node id.
std::vector<RecoveryResult> compute_all_recoveries(RouterNetwork& net, SimStats* stats = nullptr);

/// The stored blue entries of `child`, fetched with one request/response.
std::vector<BlueEntry> fetch_blue_edges(RouterNetwork& net, NodeId failed, NodeId child);

/// Concatenates tree descents, witness crossings and tree climbs into a walk
/// from `child` to the sink that avoids `failed`.
std::vector<NodeId> expand_path(const ShortestPathTree& tree, const DfsLabels& labels, NodeId failed, NodeId child,
                                const std::vector<Witness>& hop_chain);

/// Cheapest edge leaving the subtree of `node`, read from its local stores.
/// Throws std::runtime_error("bridge edge") if none exists.
LinkRecovery compute_link_recovery(const RouterNetwork& net, NodeId node);

/// Walk for a link-failure route through `edge`, which leaves node's subtree.
std::vector<NodeId> expand_link_path(const ShortestPathTree& tree, const DfsLabels& labels, NodeId node,
                                     const EdgeRecord& edge);

}  // namespace altroute
