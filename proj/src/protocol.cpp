#include "altroute/protocol.hpp"

#include "altroute/dfs_labeling.hpp"
#include "altroute/edge_propagation.hpp"

#include <stdexcept>

namespace altroute {

FailureMode parse_failure_mode(const std::string& text) {
    if (text == "node" || text == "node-failure") return FailureMode::Node;
    if (text == "link" || text == "link-failure") return FailureMode::Link;
    if (text == "both") return FailureMode::Both;
    throw std::invalid_argument("unknown failure mode '" + text + "'");
}

SimStats PhaseStats::total() const {
    SimStats all = wake;
    all += count;
    all += allocation;
    all += collect;
    all += recovery;
    return all;
}

ProtocolRun run_protocol(const Graph& graph, NodeId sink, const SimConfig& config, FailureMode mode) {
    ProtocolRun run;
    ShortestPathTree tree = dijkstra_spt(graph, sink);
    run.predicted_edge_messages = predicted_edge_messages(graph, tree);
    run.network = std::make_unique<RouterNetwork>(graph, std::move(tree), config);
    RouterNetwork& net = *run.network;

    run.stats.wake = run_wake_phase(net);
    run.stats.count = run_count_phase(net);
    run.stats.allocation = run_allocation_phase(net);
    run.labels = labels_of(net);
    run.stats.collect = collect_non_tree_edges(net);

    if (mode != FailureMode::Link) {
        for (auto& result : compute_all_recoveries(net, &run.stats.recovery)) {
            run.tables.push_back(std::move(result.table));
            run.work.push_back(std::move(result.work));
        }
    }
    if (mode != FailureMode::Node) {
        for (NodeId v = 0; v < net.size(); ++v) {
            if (v != sink) run.links.push_back(compute_link_recovery(net, v));
        }
    }
    return run;
}

}  // namespace altroute
