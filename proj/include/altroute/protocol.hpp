#pragma once

#include "altroute/graph.hpp"
#include "altroute/node.hpp"
#include "altroute/recovery.hpp"
#include "altroute/sim.hpp"

#include <memory>
#include <string>
#include <vector>

namespace altroute {

enum class FailureMode { Node, Link, Both };

FailureMode parse_failure_mode(const std::string& text);

struct PhaseStats {
    SimStats wake;
    SimStats count;
    SimStats allocation;
    SimStats collect;
    SimStats recovery;

    std::uint64_t label_messages() const {
        return wake.total_delivered() + count.total_delivered() + allocation.total_delivered();
    }
    SimStats total() const;
};

/// Everything one end-to-end run produces.
struct ProtocolRun {
    std::unique_ptr<RouterNetwork> network;
    DfsLabels labels;
    std::vector<RecoveryTable> tables;  // ascending failed id, sink excluded
    std::vector<RecoveryWork> work;     // parallel to tables
    std::vector<LinkRecovery> links;    // ascending node id, sink excluded
    PhaseStats stats;
    std::uint64_t predicted_edge_messages = 0;

    const ShortestPathTree& tree() const { return network->tree(); }
    const Graph& graph() const { return network->graph(); }
};

/// Shortest-paths tree, Wake & Label, edge collection, then the recovery
/// conversations (and link routes when requested), each phase run to
/// quiescence before the next starts.
ProtocolRun run_protocol(const Graph& graph, NodeId sink, const SimConfig& config = {},
                         FailureMode mode = FailureMode::Node);

}  // namespace altroute
