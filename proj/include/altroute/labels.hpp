#pragma once

#include "altroute/graph.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace altroute {

/// DFS entry/exit labels of one node. Subtree membership is interval containment.
struct Interval {
    std::uint32_t start = 0;
    std::uint32_t end = 0;

    std::uint32_t width() const { return end - start + 1; }
    bool contains(Interval inner) const { return start <= inner.start && inner.end <= end; }

    auto operator<=>(const Interval&) const = default;
};

/// Per-node labels over [1, 2n].
struct DfsLabels {
    std::vector<Interval> of;

    Interval operator[](NodeId v) const { return of[v]; }
    std::size_t size() const { return of.size(); }

    friend bool operator==(const DfsLabels&, const DfsLabels&) = default;
};

/// u lies in the subtree of v (reflexive).
inline bool is_descendant(Interval u, Interval v) { return v.contains(u); }
inline bool is_descendant(const DfsLabels& labels, NodeId u, NodeId v) {
    return is_descendant(labels[u], labels[v]);
}

}  // namespace altroute
