#include "nlalign/resolve.hpp"

#include <algorithm>
#include <deque>

namespace nlalign {

namespace {

void sort_unique(std::vector<NetId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Union of two sorted vectors into `dst`; returns true if dst grew.
bool merge_into(std::vector<NetId>& dst, const std::vector<NetId>& src) {
    if (src.empty())
        return false;
    std::size_t before = dst.size();
    std::vector<NetId> merged;
    merged.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
    dst = std::move(merged);
    return dst.size() != before;
}

}  // namespace

bool PendingMap::contains(NetId n) const {
    return std::binary_search(pending.begin(), pending.end(), n);
}

RPSet compute_rps(const DesignGraph& g, const std::unordered_set<NetId>& rps, NetId start,
                  Direction dir, std::size_t visit_budget) {
    RPSet out;
    std::vector<char> visited(g.nets.size(), 0);
    std::deque<NetId> queue;
    queue.push_back(start);
    visited[start] = 1;
    std::size_t visits = 0;

    auto offer = [&](NetId next) {
        if (visited[next])
            return;
        visited[next] = 1;
        if (g.net_is_const_driven(next))
            return;  // treated as absent fan-in
        if (rps.count(next)) {
            out.points.push_back(next);
            return;  // first RP on this path: stop here
        }
        queue.push_back(next);
    };

    while (!queue.empty()) {
        if (++visits > visit_budget) {
            out.truncated = true;
            break;
        }
        NetId cur = queue.front();
        queue.pop_front();
        const Net& n = g.net(cur);
        if (dir == Direction::BACKWARD) {
            if (n.driver == kNoNode)
                continue;
            for (NetId in : g.node(n.driver).in_nets)
                offer(in);
        } else {
            for (NodeId s : n.sinks)
                for (NetId on : g.node(s).out_nets)
                    offer(on);
        }
    }
    sort_unique(out.points);
    return out;
}

namespace {

// Frontier propagation for one direction over the pending universe. Nets are
// processed in topological order (Kahn) first; any cycle leftovers iterate to
// a fixed point, which converges because the sets only grow.
void sweep_direction(const DesignGraph& g, const std::unordered_set<NetId>& rps,
                     const PendingMap& pending, Direction dir,
                     std::unordered_map<NetId, RPSet>& out) {
    const std::size_t nn = g.nets.size();
    std::vector<char> is_pending(nn, 0);
    for (NetId n : pending.pending)
        is_pending[n] = 1;

    std::vector<std::vector<NetId>> deps(nn);   // pending nets this net's set depends on
    std::vector<std::vector<NetId>> succs(nn);  // inverse of deps
    std::vector<std::vector<NetId>> base(nn);   // direct RP contributions

    auto each_adjacent = [&](NetId n, auto&& fn) {
        const Net& net = g.net(n);
        if (dir == Direction::BACKWARD) {
            if (net.driver == kNoNode)
                return;
            for (NetId in : g.node(net.driver).in_nets)
                fn(in);
        } else {
            for (NodeId s : net.sinks)
                for (NetId on : g.node(s).out_nets)
                    fn(on);
        }
    };

    for (NetId n : pending.pending) {
        each_adjacent(n, [&](NetId x) {
            if (g.net_is_const_driven(x))
                return;
            if (rps.count(x)) {
                base[n].push_back(x);
            } else if (is_pending[x]) {
                deps[n].push_back(x);
            }
        });
        sort_unique(base[n]);
        sort_unique(deps[n]);
        for (NetId x : deps[n])
            succs[x].push_back(n);
    }

    std::vector<RPSet> sets(nn);
    std::vector<std::uint32_t> indeg(nn, 0);
    for (NetId n : pending.pending)
        indeg[n] = static_cast<std::uint32_t>(deps[n].size());

    std::deque<NetId> topo;
    for (NetId n : pending.pending)
        if (indeg[n] == 0)
            topo.push_back(n);

    std::vector<char> done(nn, 0);
    while (!topo.empty()) {
        NetId n = topo.front();
        topo.pop_front();
        done[n] = 1;
        sets[n].points = base[n];
        for (NetId x : deps[n])
            merge_into(sets[n].points, sets[x].points);
        for (NetId s : succs[n])
            if (!done[s] && --indeg[s] == 0)
                topo.push_back(s);
    }

    // Cycle participants: Kleene iteration until no set changes.
    std::vector<NetId> cyclic;
    for (NetId n : pending.pending)
        if (!done[n]) {
            cyclic.push_back(n);
            sets[n].points = base[n];
        }
    if (!cyclic.empty()) {
        // A topologically-done net can never depend on a cycle participant,
        // so growth only ever propagates to other not-done nets.
        std::deque<NetId> work(cyclic.begin(), cyclic.end());
        std::vector<char> queued(nn, 0);
        for (NetId n : cyclic)
            queued[n] = 1;
        while (!work.empty()) {
            NetId n = work.front();
            work.pop_front();
            queued[n] = 0;
            bool grew = false;
            for (NetId x : deps[n])
                grew |= merge_into(sets[n].points, sets[x].points);
            if (!grew)
                continue;
            for (NetId s : succs[n])
                if (!done[s] && !queued[s]) {
                    queued[s] = 1;
                    work.push_back(s);
                }
        }
    }

    out.reserve(pending.pending.size());
    for (NetId n : pending.pending)
        out[n] = std::move(sets[n]);
}

}  // namespace

RPMaps compute_all_rps(const DesignGraph& g, const std::unordered_set<NetId>& rps,
                       const PendingMap& pending) {
    RPMaps maps;
    sweep_direction(g, rps, pending, Direction::BACKWARD, maps.srp);
    sweep_direction(g, rps, pending, Direction::FORWARD, maps.erp);
    return maps;
}

PendingMap pending_nets(const DesignGraph& g, const std::unordered_set<NetId>& aligned) {
    PendingMap pm;
    for (const Net& n : g.nets) {
        if (aligned.count(n.id) || g.net_is_const_driven(n.id))
            continue;
        pm.pending.push_back(n.id);
    }
    return pm;
}

ReducedGraph reduce_to_sequential(const DesignGraph& g, const std::vector<NetId>& anchor_nets) {
    const std::size_t nn = g.nets.size();
    std::vector<char> retained(nn, 0);
    for (NetId a : anchor_nets)
        retained[a] = 1;
    for (const Net& n : g.nets)
        if (g.net_is_seq_adjacent(n.id) || g.net_touches_port(n.id))
            retained[n.id] = 1;

    std::unordered_set<NetId> retained_set;
    for (NetId i = 0; i < nn; ++i)
        if (retained[i])
            retained_set.insert(i);

    ReducedGraph rg;
    rg.graph.side = g.side;
    rg.graph.applied_policy = g.applied_policy;
    rg.graph.module_paths = g.module_paths;

    for (NetId i = 0; i < nn; ++i) {
        if (!retained[i])
            continue;
        Net n = g.nets[i];
        NetId rid = static_cast<NetId>(rg.graph.nets.size());
        rg.from_orig.emplace(n.id, rid);
        rg.to_orig.push_back(n.id);
        n.id = rid;
        n.driver = kNoNode;
        n.sinks.clear();
        rg.graph.nets.push_back(std::move(n));
    }

    auto add_node = [&](CellNode c) {
        c.id = static_cast<NodeId>(rg.graph.nodes.size());
        for (NetId in : c.in_nets)
            rg.graph.nets[in].sinks.push_back(c.id);
        for (NetId on : c.out_nets) {
            Net& net = rg.graph.nets[on];
            if (net.driver != kNoNode)
                throw Error(ErrCode::MULTI_DRIVER,
                            "reduced net '" + net.raw_name + "' has multiple drivers");
            net.driver = c.id;
        }
        rg.graph.nodes.push_back(std::move(c));
    };

    for (const CellNode& c : g.nodes) {
        bool keep = c.cls == CellClass::SEQUENTIAL || c.cls == CellClass::PORT_IN ||
                    c.cls == CellClass::PORT_OUT;
        if (c.cls == CellClass::CONSTANT) {
            for (NetId on : c.out_nets)
                keep |= retained[on] != 0;
        }
        if (!keep)
            continue;
        CellNode copy = c;
        copy.in_nets.clear();
        copy.out_nets.clear();
        for (NetId in : c.in_nets)
            if (retained[in])
                copy.in_nets.push_back(rg.from_orig.at(in));
        for (NetId on : c.out_nets)
            if (retained[on])
                copy.out_nets.push_back(rg.from_orig.at(on));
        add_node(std::move(copy));
    }

    // Every retained net whose driver was combinational gets a synthetic
    // pass-through node fed by its nearest retained predecessors, so
    // nearest-RP relations among retained nets survive the contraction.
    for (NetId rid = 0; rid < rg.graph.nets.size(); ++rid) {
        if (rg.graph.nets[rid].driver != kNoNode)
            continue;
        NetId orig = rg.to_orig[rid];
        RPSet preds = compute_rps(g, retained_set, orig, Direction::BACKWARD);
        CellNode pass;
        pass.name = "$pass$" + g.nets[orig].raw_name;
        pass.cell_type = "$pass";
        pass.cls = CellClass::COMBINATIONAL;
        for (NetId p : preds.points)
            pass.in_nets.push_back(rg.from_orig.at(p));
        pass.out_nets.push_back(rid);
        add_node(std::move(pass));
    }

    rg.graph.name_index.reserve(rg.graph.nets.size());
    for (const Net& n : rg.graph.nets)
        rg.graph.name_index.emplace(n.canon_name, n.id);
    rg.graph.stats = compute_stats(rg.graph);
    return rg;
}

}  // namespace nlalign
