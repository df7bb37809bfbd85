// -*- c++ -*-
// Resolved-point computation: per-net start/end RP sets via topological
// traversal, the pending-net map, and the reduced sequential subgraph.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nlalign/graph.hpp"

namespace nlalign {

inline constexpr std::size_t kDefaultVisitBudget = 100000;

// Sorted, deduplicated set of resolved-point nets reachable from one net.
struct RPSet {
    std::vector<NetId> points;
    bool truncated = false;  // per-net traversal hit the visit budget

    bool empty() const { return points.empty(); }
    bool operator==(const RPSet& o) const { return points == o.points; }
};

enum class Direction { BACKWARD, FORWARD };

struct PendingMap {
    std::vector<NetId> pending;  // sorted

    bool contains(NetId n) const;
};

struct RPMaps {
    std::unordered_map<NetId, RPSet> srp;
    std::unordered_map<NetId, RPSet> erp;
    std::uint64_t epoch = 0;
};

// Per-net BFS: stops at the first resolved point on every path, skips
// constant-driven nets, and terminates on cycles via a visited set.
RPSet compute_rps(const DesignGraph& g, const std::unordered_set<NetId>& rps, NetId n,
                  Direction dir, std::size_t visit_budget = kDefaultVisitBudget);

// Whole-graph sweep equivalent to compute_rps over every pending net:
// frontier propagation in topological order with fixed-point iteration for
// cycle participants.
RPMaps compute_all_rps(const DesignGraph& g, const std::unordered_set<NetId>& rps,
                       const PendingMap& pending);

// All nets minus aligned/anchored minus constant-driven.
PendingMap pending_nets(const DesignGraph& g, const std::unordered_set<NetId>& aligned);

// Graph restricted to sequential-adjacent, anchor and port nets; combinational
// paths between retained nets collapse into synthetic pass-through drivers.
struct ReducedGraph {
    DesignGraph graph;
    std::vector<NetId> to_orig;                  // reduced net id -> original net id
    std::unordered_map<NetId, NetId> from_orig;  // original net id -> reduced net id
};

ReducedGraph reduce_to_sequential(const DesignGraph& g, const std::vector<NetId>& anchor_nets);

}  // namespace nlalign
