#include "altroute/recovery.hpp"

#include "altroute/node.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>

namespace altroute {

Cost blue_weight_from_green(Cost fixed_green_weight, Cost dist_w, Cost cost_w_wu, Cost cost_w_wv) {
    Cost weight = fixed_green_weight - (2 * dist_w + cost_w_wu + cost_w_wv);
    if (weight.is_negative()) throw std::runtime_error("weight inconsistency");
    return weight;
}

namespace {

void finish_failed(RecoverySession& session, NodeId failed) {
    session.status = RecoverySession::Status::Failed;
    session.error = "graph not biconnected for " + std::to_string(failed);
}

/// Settles the next candidate and, if anything is left to relax, asks that
/// child for its blue edges.
void advance(NodeActor& node, SimNetwork& net) {
    RecoverySession& s = node.recovery;
    const std::size_t k = node.child_count();
    while (!s.candidates.empty()) {
        auto [priority, slot] = s.candidates.top();
        s.candidates.pop();
        if (s.settled[slot] || priority != s.best[slot]) continue;
        if (priority.is_infinite()) {
            finish_failed(s, node.id());
            return;
        }
        s.settled[slot] = true;
        ++s.settled_count;
        ++s.work.extract_min;
        if (s.settled_count == k) break;

        const NodeId child = node.setup().children[slot].node;
        s.awaiting = slot;
        ++s.work.blue_fetches;
        s.work.fetched.push_back(child);
        net.send(Message{node.id(), child, MessageKind::BlueFetch, std::monostate{}, false});
        return;
    }
    if (s.settled_count != k) {
        finish_failed(s, node.id());
        return;
    }
    s.status = RecoverySession::Status::Done;
}

void relax_blue(NodeActor& node, std::size_t from, const std::vector<BlueEntry>& entries) {
    RecoverySession& s = node.recovery;
    const auto& children = node.setup().children;
    for (const BlueEntry& entry : entries) {
        auto to = node.child_slot(entry.sibling);
        if (!to) throw std::runtime_error("blue entry names unknown sibling " + std::to_string(entry.sibling));
        if (s.settled[*to]) continue;
        ++s.work.relaxations;
        Cost weight = blue_weight_from_green(entry.edge.fixed_green_weight, node.setup().dist, children[from].cost,
                                             children[*to].cost);
        Cost candidate = s.best[from] + weight;
        if (candidate < s.best[*to]) {
            s.best[*to] = candidate;
            s.via[*to] = RecoverySession::Via{WitnessColor::Blue, from, entry.edge};
            s.candidates.emplace(candidate, *to);
        }
    }
}

std::vector<Witness> hop_chain_of(const RecoverySession& s, std::size_t slot) {
    std::vector<Witness> chain;
    for (std::size_t cur = slot;;) {
        const auto& via = s.via[cur];
        if (!via) throw std::logic_error("settled slot without a route");
        chain.push_back(Witness{via->color, via->edge});
        if (via->color == WitnessColor::Green) break;
        cur = via->from;
        if (chain.size() > s.via.size()) throw std::logic_error("cyclic recovery route");
    }
    return chain;
}

RecoveryResult finish_recovery(const RouterNetwork& net, NodeId failed, const DfsLabels& labels) {
    const NodeActor& node = net.node(failed);
    const RecoverySession& s = node.recovery;
    if (s.status == RecoverySession::Status::Failed) throw std::runtime_error(s.error);
    if (s.status != RecoverySession::Status::Done) throw std::logic_error("recovery did not reach quiescence");

    RecoveryResult result;
    result.table.failed = failed;
    result.work = s.work;
    for (std::size_t i = 0; i < node.child_count(); ++i) {
        RecoveryEntry entry;
        entry.child = node.setup().children[i].node;
        entry.cost = s.best[i];
        entry.hop_chain = hop_chain_of(s, i);
        entry.path = expand_path(net.tree(), labels, failed, entry.child, entry.hop_chain);
        result.table.entries.push_back(std::move(entry));
    }
    return result;
}

}  // namespace

void start_recovery(NodeActor& node, SimNetwork& net) {
    if (node.is_root()) throw std::invalid_argument("sink cannot fail");
    RecoverySession s;
    s.status = RecoverySession::Status::Running;
    const auto& children = node.setup().children;
    const std::size_t k = children.size();
    s.best.assign(k, Cost::infinity());
    s.settled.assign(k, false);
    s.via.assign(k, std::nullopt);
    for (std::size_t i = 0; i < k; ++i) {
        auto green = node.stores.children_green.find(children[i].node);
        if (green != node.stores.children_green.end()) {
            ++s.work.relaxations;
            // The stored weight includes d(s, child); the recovery graph measures from the child.
            s.best[i] = green->second.fixed_green_weight - (node.setup().dist + children[i].cost);
            s.via[i] = RecoverySession::Via{WitnessColor::Green, i, green->second};
        }
        s.candidates.emplace(s.best[i], i);
    }
    node.recovery = std::move(s);
    advance(node, net);
}

void on_blue_fetch(NodeActor& node, SimNetwork& net, const Message& msg) {
    if (msg.from != node.setup().parent) throw std::logic_error("blue fetch from non-parent");
    BlueReplyPayload reply;
    for (const auto& [sibling, edge] : node.stores.parent_blue) reply.entries.push_back(BlueEntry{sibling, edge});
    net.send(Message{node.id(), msg.from, MessageKind::BlueReply, std::move(reply), true});
}

void on_blue_reply(NodeActor& node, SimNetwork& net, const Message& msg) {
    const auto& entries = std::get<BlueReplyPayload>(msg.payload).entries;
    RecoverySession& s = node.recovery;
    auto slot = node.child_slot(msg.from);
    if (!slot) throw std::logic_error("blue reply from non-child " + std::to_string(msg.from));
    if (s.status != RecoverySession::Status::Running || s.awaiting != slot) {
        node.inspected_blue[msg.from] = entries;
        return;
    }
    s.awaiting.reset();
    relax_blue(node, *slot, entries);
    advance(node, net);
}

RecoveryResult compute_recovery(RouterNetwork& net, NodeId failed) {
    if (failed == net.root()) throw std::invalid_argument("sink cannot fail");
    start_recovery(net.node(failed), net.sim());
    net.sim().run_until_quiescent();
    return finish_recovery(net, failed, labels_of(net));
}

std::vector<RecoveryResult> compute_all_recoveries(RouterNetwork& net, SimStats* stats) {
    for (NodeId x = 0; x < net.size(); ++x) {
        if (x != net.root()) start_recovery(net.node(x), net.sim());
    }
    SimStats run = net.sim().run_until_quiescent();
    if (stats != nullptr) *stats = std::move(run);

    const DfsLabels labels = labels_of(net);
    std::vector<RecoveryResult> results;
    results.reserve(net.size());
    for (NodeId x = 0; x < net.size(); ++x) {
        if (x != net.root()) results.push_back(finish_recovery(net, x, labels));
    }
    return results;
}

std::vector<BlueEntry> fetch_blue_edges(RouterNetwork& net, NodeId failed, NodeId child) {
    NodeActor& node = net.node(failed);
    if (!node.child_slot(child)) throw std::invalid_argument("not a child of the failed node");
    node.inspected_blue.erase(child);
    net.sim().send(Message{failed, child, MessageKind::BlueFetch, std::monostate{}, false});
    net.sim().run_until_quiescent();
    auto it = node.inspected_blue.find(child);
    if (it == node.inspected_blue.end()) throw std::logic_error("blue fetch went unanswered");
    return it->second;
}

std::vector<NodeId> expand_path(const ShortestPathTree& tree, const DfsLabels& labels, NodeId failed, NodeId child,
                                const std::vector<Witness>& hop_chain) {
    if (hop_chain.empty() || hop_chain.back().color != WitnessColor::Green) {
        throw std::invalid_argument("hop chain must end with a green witness");
    }
    std::vector<NodeId> path{child};
    NodeId here = child;

    auto append = [&path](const std::vector<NodeId>& nodes) {
        for (NodeId v : nodes) {
            if (path.back() != v) path.push_back(v);
        }
    };
    auto mismatch = [&](const Witness& w) {
        return std::runtime_error("witness (" + std::to_string(w.edge.u) + "," + std::to_string(w.edge.v) +
                                  ") does not match the recovery route of " + std::to_string(child));
    };

    for (std::size_t i = 0; i < hop_chain.size(); ++i) {
        const Witness& w = hop_chain[i];
        if ((w.color == WitnessColor::Green) != (i + 1 == hop_chain.size())) throw mismatch(w);

        NodeId inside = w.edge.u, outside = w.edge.v;
        if (!is_descendant(labels, inside, here)) std::swap(inside, outside);
        if (!is_descendant(labels, inside, here) || is_descendant(labels, outside, here)) throw mismatch(w);

        auto down = tree_path(tree, inside, here);
        std::reverse(down.begin(), down.end());
        append(down);
        path.push_back(outside);

        if (w.color == WitnessColor::Green) {
            if (is_descendant(labels, outside, failed)) throw mismatch(w);
            append(tree_path(tree, outside, tree.root));
        } else {
            if (!is_descendant(labels, outside, failed) || outside == failed) throw mismatch(w);
            NodeId sibling = outside;
            while (tree.parent[sibling] != failed) sibling = tree.parent[sibling];
            append(tree_path(tree, outside, sibling));
            here = sibling;
        }
    }
    return path;
}

std::vector<NodeId> expand_link_path(const ShortestPathTree& tree, const DfsLabels& labels, NodeId node,
                                     const EdgeRecord& edge) {
    NodeId inside = edge.u, outside = edge.v;
    if (!is_descendant(labels, inside, node)) std::swap(inside, outside);
    if (!is_descendant(labels, inside, node) || is_descendant(labels, outside, node)) {
        throw std::runtime_error("edge does not leave the subtree of " + std::to_string(node));
    }
    auto path = tree_path(tree, inside, node);
    std::reverse(path.begin(), path.end());
    auto up = tree_path(tree, outside, tree.root);
    path.insert(path.end(), up.begin(), up.end());
    return path;
}

LinkRecovery compute_link_recovery(const RouterNetwork& net, NodeId node_id) {
    if (node_id == net.root()) throw std::invalid_argument("sink has no parent link");
    const NodeActor& node = net.node(node_id);
    const Interval own = *node.labels.own;

    std::optional<EdgeRecord> best;
    auto consider = [&best](const EdgeRecord& e) {
        if (!best || preferred(e, *best)) best = e;
    };
    for (const auto& [child, edge] : node.stores.children_green) consider(edge);
    for (const auto& [sibling, edge] : node.stores.parent_blue) consider(edge);
    const auto& peers = node.setup().peers;
    for (std::size_t i = 0; i < peers.size(); ++i) {
        const auto& labels = node.collect.peer_labels[i];
        if (!labels) throw std::logic_error("peer labels missing at node " + std::to_string(node_id));
        if (is_descendant(*labels, own)) continue;
        const PeerLink& p = peers[i];
        consider(EdgeRecord{std::min(node_id, p.node), std::max(node_id, p.node), p.cost,
                            fixed_green_weight(node.setup().dist, p.cost, p.dist)});
    }
    if (!best) throw std::runtime_error("bridge edge");

    LinkRecovery out;
    out.node = node_id;
    out.parent = node.setup().parent;
    out.edge = *best;
    out.cost = best->fixed_green_weight - node.setup().dist;
    out.path = expand_link_path(net.tree(), labels_of(net), node_id, *best);
    return out;
}

}  // namespace altroute
