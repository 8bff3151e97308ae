#pragma once

#include "altroute/cost.hpp"
#include "altroute/graph.hpp"
#include "altroute/labels.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace altroute {

enum class MessageKind : std::uint8_t {
    Wake,
    Count,
    Allocate,
    Collect,
    LabelNotice,
    NonTreeEdge,
    BlueFetch,
    BlueReply,
};

inline constexpr std::size_t kMessageKindCount = 8;

constexpr std::string_view to_string(MessageKind kind) {
    constexpr std::array<std::string_view, kMessageKindCount> names{
        "wake", "count", "allocate", "collect", "label_notice", "non_tree_edge", "blue_fetch", "blue_reply"};
    return names[static_cast<std::size_t>(kind)];
}

struct CountPayload {
    std::uint32_t subtree_size = 0;
};

/// The recipient's interval, plus what it needs to bucket edges by sibling.
struct AllocatePayload {
    Interval own;
    Interval parent;
    std::vector<std::pair<NodeId, Interval>> siblings;  // ascending sibling id
};

struct LabelNoticePayload {
    Interval labels;
};

/// A non-tree edge travelling up the tree. Endpoints are ordered p1 < p2.
struct NonTreeEdgeMsg {
    NodeId p1 = 0;
    NodeId p2 = 0;
    Interval p1_labels;
    Interval p2_labels;
    Cost cost;
    Cost fixed_green_weight;
    NodeId sender = kNoNode;
};

/// Canonical stored form of a non-tree edge with its fixed green weight.
struct EdgeRecord {
    NodeId u = 0;
    NodeId v = 0;
    Cost cost;
    Cost fixed_green_weight;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Strict preference: smaller fixed green weight, then smaller (u, v).
inline bool preferred(const EdgeRecord& a, const EdgeRecord& b) {
    if (a.fixed_green_weight != b.fixed_green_weight) return a.fixed_green_weight < b.fixed_green_weight;
    return std::pair{a.u, a.v} < std::pair{b.u, b.v};
}

struct BlueEntry {
    NodeId sibling = 0;
    EdgeRecord edge;

    friend bool operator==(const BlueEntry&, const BlueEntry&) = default;
};

struct BlueReplyPayload {
    std::vector<BlueEntry> entries;  // ascending sibling id
};

using Payload =
    std::variant<std::monostate, CountPayload, AllocatePayload, LabelNoticePayload, NonTreeEdgeMsg, BlueReplyPayload>;

struct Message {
    NodeId from = 0;
    NodeId to = 0;
    MessageKind kind = MessageKind::Wake;
    Payload payload;
    bool is_reply = false;
};

}  // namespace altroute
