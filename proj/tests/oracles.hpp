// Independent oracles. These deliberately avoid the library's index and
// sweep machinery: path enumeration for nearest-RP semantics, nested-loop
// weight scoring, and exhaustive signature comparison for full matching.

#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "nlalign/graph.hpp"
#include "nlalign/resolve.hpp"

namespace nlalign::test {

// Nearest-RP set by explicit path enumeration with an on-path visited set.
// Exponential; only for small fixtures.
inline std::set<NetId> oracle_rps(const DesignGraph& g, const std::set<NetId>& rps, NetId start,
                                  Direction dir) {
    std::set<NetId> out;
    std::vector<char> on_path(g.nets.size(), 0);
    std::function<void(NetId)> walk = [&](NetId cur) {
        std::vector<NetId> nexts;
        if (dir == Direction::BACKWARD) {
            const Net& n = g.net(cur);
            if (n.driver != kNoNode)
                for (NetId in : g.node(n.driver).in_nets)
                    nexts.push_back(in);
        } else {
            for (NodeId s : g.net(cur).sinks)
                for (NetId on : g.node(s).out_nets)
                    nexts.push_back(on);
        }
        for (NetId nx : nexts) {
            if (on_path[nx] || g.net_is_const_driven(nx))
                continue;
            if (rps.count(nx)) {
                out.insert(nx);
                continue;
            }
            on_path[nx] = 1;
            walk(nx);
            on_path[nx] = 0;
        }
    };
    on_path[start] = 1;
    walk(start);
    return out;
}

// Weight per the published formula, computed with nested loops.
inline double oracle_weight_finite(const std::vector<NetId>& synth_set,
                                   const std::vector<NetId>& ref_set, double coeff,
                                   bool& sentinel, bool& zero) {
    std::size_t matches = 0;
    for (NetId s : synth_set)
        for (NetId r : ref_set)
            if (s == r) {
                matches++;
                break;
            }
    sentinel = false;
    zero = false;
    if (matches == 0) {
        zero = true;
        return 0.0;
    }
    std::size_t mismatches = synth_set.size() - matches;
    if (mismatches == 0) {
        sentinel = true;
        return 0.0;
    }
    return coeff * static_cast<double>(matches) / static_cast<double>(mismatches);
}

struct OracleSig {
    std::vector<NetId> srp, erp;
    bool operator==(const OracleSig& o) const = default;
};

// Per-net BFS signatures for a candidate set, one compute_rps call per net.
inline std::vector<std::pair<NetId, OracleSig>> oracle_signatures(
    const DesignGraph& g, const std::unordered_set<NetId>& rps, const std::vector<NetId>& nets) {
    std::vector<std::pair<NetId, OracleSig>> out;
    for (NetId n : nets) {
        OracleSig sig;
        sig.srp = compute_rps(g, rps, n, Direction::BACKWARD).points;
        sig.erp = compute_rps(g, rps, n, Direction::FORWARD).points;
        out.emplace_back(n, std::move(sig));
    }
    return out;
}

// Exhaustive signature-comparison "bijection": for each pending net, every
// candidate whose signature matches exactly.
inline std::vector<std::pair<NetId, std::vector<NetId>>> oracle_full_bijection(
    const std::vector<std::pair<NetId, OracleSig>>& pending_sigs,
    const std::vector<std::pair<NetId, OracleSig>>& candidate_sigs) {
    std::vector<std::pair<NetId, std::vector<NetId>>> out;
    for (const auto& [n, sig] : pending_sigs) {
        std::vector<NetId> hits;
        for (const auto& [c, csig] : candidate_sigs)
            if (sig == csig)
                hits.push_back(c);
        out.emplace_back(n, std::move(hits));
    }
    return out;
}

}  // namespace nlalign::test
