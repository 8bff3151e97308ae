#include "altroute/dfs_labeling.hpp"

#include "altroute/node.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace altroute {

namespace {

void wake(NodeActor& node, SimNetwork& net) {
    node.labels.awake = true;
    node.labels.reports_pending = node.child_count();
    for (const Neighbor& c : node.setup().children) {
        net.send(Message{node.id(), c.node, MessageKind::Wake, std::monostate{}, false});
    }
}

void report(NodeActor& node, SimNetwork& net) {
    LabelState& st = node.labels;
    st.reported = true;
    if (node.is_root()) {
        st.network_size = st.subtree_size;
        return;
    }
    net.send(Message{node.id(), node.setup().parent, MessageKind::Count, CountPayload{st.subtree_size}, true});
}

void allocate_children(NodeActor& node, SimNetwork& net) {
    LabelState& st = node.labels;
    const Interval own = *st.own;
    const auto& children = node.setup().children;

    st.children.clear();
    std::uint64_t next = own.start + 1;
    for (std::size_t i = 0; i < children.size(); ++i) {
        std::uint64_t width = 2ULL * st.child_sizes[i];
        if (width == 0 || next + width - 1 > own.end - 1) throw std::runtime_error("count corruption");
        st.children.emplace_back(children[i].node,
                                 Interval{static_cast<std::uint32_t>(next), static_cast<std::uint32_t>(next + width - 1)});
        next += width;
    }

    for (std::size_t i = 0; i < st.children.size(); ++i) {
        AllocatePayload payload;
        payload.own = st.children[i].second;
        payload.parent = own;
        for (std::size_t j = 0; j < st.children.size(); ++j) {
            if (j != i) payload.siblings.push_back(st.children[j]);
        }
        net.send(Message{node.id(), st.children[i].first, MessageKind::Allocate, std::move(payload), false});
    }
}

}  // namespace

void on_wake(NodeActor& node, SimNetwork& net) {
    if (node.labels.awake) return;
    wake(node, net);
}

void on_count(NodeActor& node, SimNetwork& net, const Message& msg) {
    LabelState& st = node.labels;
    auto slot = node.child_slot(msg.from);
    if (!slot) throw std::logic_error("count report from non-child " + std::to_string(msg.from));
    if (st.reports_pending == 0 || st.child_sizes[*slot] != 0) throw std::runtime_error("count corruption");
    const auto size = std::get<CountPayload>(msg.payload).subtree_size;
    st.child_sizes[*slot] = size;
    st.subtree_size += size;
    if (--st.reports_pending == 0) report(node, net);
}

void on_allocate(NodeActor& node, SimNetwork& net, const Message& msg) {
    LabelState& st = node.labels;
    const auto& payload = std::get<AllocatePayload>(msg.payload);
    if (payload.own.width() != 2 * st.subtree_size) throw std::runtime_error("count corruption");
    st.own = payload.own;
    st.parent = payload.parent;
    st.siblings = payload.siblings;
    allocate_children(node, net);
}

SimStats run_wake_phase(RouterNetwork& net) {
    wake(net.node(net.root()), net.sim());
    return net.sim().run_until_quiescent();
}

SimStats run_count_phase(RouterNetwork& net) {
    for (NodeId v = 0; v < net.size(); ++v) {
        if (!net.node(v).labels.awake) throw std::logic_error("wake phase incomplete at node " + std::to_string(v));
    }
    for (NodeId v = 0; v < net.size(); ++v) {
        NodeActor& node = net.node(v);
        if (node.child_count() == 0) report(node, net.sim());
    }
    return net.sim().run_until_quiescent();
}

SimStats run_allocation_phase(RouterNetwork& net) {
    NodeActor& root = net.node(net.root());
    const std::uint32_t n = root.labels.network_size;
    if (n == 0) throw std::logic_error("count phase incomplete");
    root.labels.own = Interval{1, 2 * n};
    allocate_children(root, net.sim());
    return net.sim().run_until_quiescent();
}

SimStats run_wake_and_label(RouterNetwork& net) {
    SimStats total = run_wake_phase(net);
    total += run_count_phase(net);
    total += run_allocation_phase(net);
    return total;
}

DfsLabels labels_of(const RouterNetwork& net) {
    DfsLabels labels;
    labels.of.reserve(net.size());
    for (NodeId v = 0; v < net.size(); ++v) {
        const auto& own = net.node(v).labels.own;
        if (!own) throw std::logic_error("node " + std::to_string(v) + " has no labels");
        labels.of.push_back(*own);
    }
    return labels;
}

}  // namespace altroute
