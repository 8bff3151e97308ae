#pragma once

#include "altroute/labels.hpp"
#include "altroute/sim.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace altroute {

class NodeActor;
class RouterNetwork;

/// Wake & Label progress held by one node.
struct LabelState {
    bool awake = false;
    bool reported = false;
    std::size_t reports_pending = 0;
    std::uint32_t subtree_size = 1;
    std::vector<std::uint32_t> child_sizes;  // parallel to the node's children
    std::uint32_t network_size = 0;          // root only, once counting is done

    std::optional<Interval> own;
    std::optional<Interval> parent;
    std::vector<std::pair<NodeId, Interval>> siblings;
    std::vector<std::pair<NodeId, Interval>> children;
};

// Message handlers, invoked by NodeActor::receive.
void on_wake(NodeActor& node, SimNetwork& net);
void on_count(NodeActor& node, SimNetwork& net, const Message& msg);
void on_allocate(NodeActor& node, SimNetwork& net, const Message& msg);

/// Top-down: the root wakes itself and every node wakes its children.
SimStats run_wake_phase(RouterNetwork& net);

/// Bottom-up: every leaf reports 1, inner nodes report once all children did.
/// Throws std::logic_error if some node never woke.
SimStats run_count_phase(RouterNetwork& net);

/// Root takes [1, 2n]; each node hands its children consecutive sub-intervals
/// of width 2 * subtree size starting at its own start + 1, ascending by id.
/// Throws std::runtime_error("count corruption") if widths do not fit.
SimStats run_allocation_phase(RouterNetwork& net);

/// All three phases back to back.
SimStats run_wake_and_label(RouterNetwork& net);

/// Labels as currently held by the actors. Throws if any node is unlabelled.
DfsLabels labels_of(const RouterNetwork& net);

}  // namespace altroute
