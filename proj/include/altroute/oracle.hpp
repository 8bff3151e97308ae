#pragma once

#include "altroute/graph.hpp"
#include "altroute/labels.hpp"
#include "altroute/recovery.hpp"

#include <optional>
#include <string>
#include <vector>

namespace altroute {

struct AlternatePath {
    Cost cost;
    std::vector<NodeId> path;  // from the start node to the sink
};

/// Exact shortest path from `child` to `sink` once `failed` and its links are
/// gone. Throws std::runtime_error if nothing is left connecting them.
AlternatePath optimal_alternate(const Graph& graph, NodeId sink, NodeId failed, NodeId child);

/// Exact shortest path from `node` to `sink` without the link to `parent`.
AlternatePath optimal_link_alternate(const Graph& graph, NodeId sink, NodeId node, NodeId parent);

/// Sequential DFS of the tree, children ascending, one label on entry and one on exit.
DfsLabels centralized_dfs_labels(const ShortestPathTree& tree);

/// Recovery tables computed with full knowledge of the graph: every non-tree
/// edge is classified at its nearest common ancestor and the recovery graphs
/// are built whole, weighted by the per-child formulas.
std::vector<RecoveryTable> centralized_snfr(const Graph& graph, NodeId sink);

/// Link-failure routes computed from the whole edge list.
std::vector<LinkRecovery> centralized_link_recovery(const Graph& graph, NodeId sink);

/// nullopt when the entry is a walk from its child to the sink that avoids
/// `failed` and whose edge costs sum to the recorded cost; else the reason.
std::optional<std::string> check_recovery_entry(const Graph& graph, NodeId sink, NodeId failed,
                                                const RecoveryEntry& entry);

std::optional<std::string> check_link_recovery(const Graph& graph, NodeId sink, const LinkRecovery& link);

struct StretchEntry {
    NodeId failed = 0;
    NodeId child = 0;
    Cost optimal;
    Cost protocol;
    double ratio = 1.0;
};

struct StretchReport {
    std::vector<StretchEntry> entries;
    double mean = 1.0;
    double max = 1.0;
};

StretchReport stretch_report(const Graph& graph, NodeId sink, const std::vector<RecoveryTable>& tables);

}  // namespace altroute
