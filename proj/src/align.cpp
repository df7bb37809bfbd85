#include "nlalign/align.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>
#include <sstream>

#include "nlalign/parallel.hpp"

namespace nlalign {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void sort_unique(std::vector<NetId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t intersection_size(const std::vector<NetId>& a, const std::vector<NetId>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

}  // namespace

std::string_view to_string(MatchStage s) {
    switch (s) {
    case MatchStage::ANCHOR: return "ANCHOR";
    case MatchStage::FULL: return "FULL";
    case MatchStage::HALF_SRP: return "HALF_SRP";
    case MatchStage::HALF_ERP: return "HALF_ERP";
    case MatchStage::SURROUNDING: return "SURROUNDING";
    case MatchStage::PARTIAL: return "PARTIAL";
    }
    return "?";
}

std::string_view to_string(Confidence c) {
    switch (c) {
    case Confidence::HIGH: return "HIGH";
    case Confidence::MEDIUM: return "MEDIUM";
    case Confidence::LOW: return "LOW";
    }
    return "?";
}

Confidence stage_confidence(MatchStage s) {
    switch (s) {
    case MatchStage::ANCHOR:
    case MatchStage::FULL:
    case MatchStage::SURROUNDING:
        return Confidence::HIGH;
    case MatchStage::HALF_SRP:
    case MatchStage::HALF_ERP:
        return Confidence::MEDIUM;
    case MatchStage::PARTIAL:
        return Confidence::LOW;
    }
    return Confidence::LOW;
}

std::string to_string(const Weight& w) {
    std::ostringstream os;
    if (w.sentinels == 0) {
        os << w.finite;
    } else {
        if (w.sentinels == 1)
            os << "MAX";
        else
            os << w.sentinels << "xMAX";
        if (w.finite != 0.0)
            os << "+" << w.finite;
    }
    return os.str();
}

Weight calc_wt(const std::vector<NetId>& synth_set, const std::vector<NetId>& ref_set,
               double wt_match_coeff) {
    std::size_t num_matches = intersection_size(synth_set, ref_set);
    if (num_matches == 0)
        return {};
    std::size_t mismatches = synth_set.size() - num_matches;
    if (mismatches == 0)
        return Weight::sentinel_max();
    return {0, wt_match_coeff * static_cast<double>(num_matches) / static_cast<double>(mismatches)};
}

Weight calc_wt(const RPSet& synth_set, const RPSet& ref_set, double wt_match_coeff) {
    return calc_wt(synth_set.points, ref_set.points, wt_match_coeff);
}

RefIndex build_ref_index(std::vector<RefSig> sigs) {
    RefIndex idx;
    idx.sigs = std::move(sigs);
    for (std::uint32_t i = 0; i < idx.sigs.size(); ++i) {
        const RefSig& s = idx.sigs[i];
        if (!s.srp.empty()) {
            idx.by_srp[s.srp].push_back(i);
            for (NetId p : s.srp)
                idx.by_any_srp[p].push_back(i);
        }
        if (!s.erp.empty())
            idx.by_erp[s.erp].push_back(i);
    }
    return idx;
}

namespace {

struct MatchOutcome {
    std::vector<MatchRecord> records;
    std::size_t attempted_srp = 0;  // candidates examined through the SRP index
    std::size_t attempted_erp = 0;  // candidates examined through the ERP index
};

void sort_refs_by_canon(std::vector<NetId>& refs, const DesignGraph& g_ref) {
    std::sort(refs.begin(), refs.end(), [&](NetId a, NetId b) {
        const std::string& ca = g_ref.net(a).canon_name;
        const std::string& cb = g_ref.net(b).canon_name;
        if (ca != cb)
            return ca < cb;
        return a < b;
    });
}

MatchRecord make_record(NetId synth, std::vector<NetId> refs, MatchStage stage, Weight w,
                        const DesignGraph& g_ref, const AlignConfig& cfg) {
    sort_refs_by_canon(refs, g_ref);
    if (cfg.tie_policy == TiePolicy::LEX_FIRST && refs.size() > 1)
        refs.resize(1);
    MatchRecord rec;
    rec.synth_net = synth;
    rec.ref_nets = std::move(refs);
    rec.stage = stage;
    rec.weight = w;
    rec.confidence = stage_confidence(stage);
    std::vector<SourceLoc> locs;
    for (NetId r : rec.ref_nets) {
        const Net& rn = g_ref.net(r);
        if (rn.driver != kNoNode)
            for (const SourceLoc& l : g_ref.node(rn.driver).locs)
                locs.push_back(l);
    }
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    rec.locs = std::move(locs);
    return rec;
}

MatchOutcome full_half_one(const MatchInput& in, const RefIndex& idx, const DesignGraph& g_ref,
                           const AlignConfig& cfg) {
    MatchOutcome out;
    if (in.srp.empty() && in.erp.empty())
        return out;

    std::vector<NetId> full_ties;
    Weight best_erp;  // SRPs equal, scored on ERPs
    std::vector<NetId> ties_erp;
    Weight best_srp;  // ERPs equal, scored on SRPs
    std::vector<NetId> ties_srp;

    if (!in.srp.empty()) {
        auto it = idx.by_srp.find(in.srp);
        if (it != idx.by_srp.end()) {
            for (std::uint32_t i : it->second) {
                const RefSig& r = idx.sigs[i];
                out.attempted_srp++;
                if (r.erp == in.erp) {
                    full_ties.push_back(r.ref_net);
                    continue;
                }
                Weight w = calc_wt(in.erp, r.erp, cfg.wt_match_coeff);
                if (w.is_zero())
                    continue;
                if (ties_erp.empty() || best_erp < w) {
                    best_erp = w;
                    ties_erp.assign(1, r.ref_net);
                } else if (w == best_erp) {
                    ties_erp.push_back(r.ref_net);
                }
            }
        }
    }
    if (full_ties.empty() && !in.erp.empty()) {
        auto it = idx.by_erp.find(in.erp);
        if (it != idx.by_erp.end()) {
            for (std::uint32_t i : it->second) {
                const RefSig& r = idx.sigs[i];
                out.attempted_erp++;
                if (r.srp == in.srp) {
                    // Reachable only when the SRP side is empty on both nets.
                    full_ties.push_back(r.ref_net);
                    continue;
                }
                Weight w = calc_wt(in.srp, r.srp, cfg.wt_match_coeff);
                if (w.is_zero())
                    continue;
                if (ties_srp.empty() || best_srp < w) {
                    best_srp = w;
                    ties_srp.assign(1, r.ref_net);
                } else if (w == best_srp) {
                    ties_srp.push_back(r.ref_net);
                }
            }
        }
    }

    if (!full_ties.empty()) {
        out.records.push_back(make_record(in.synth_net, std::move(full_ties), MatchStage::FULL,
                                          Weight::sentinel_max(), g_ref, cfg));
        return out;
    }
    if (!ties_erp.empty() && !ties_srp.empty()) {
        if (best_erp == best_srp) {
            out.records.push_back(make_record(in.synth_net, std::move(ties_erp),
                                              MatchStage::HALF_ERP, best_erp, g_ref, cfg));
            out.records.push_back(make_record(in.synth_net, std::move(ties_srp),
                                              MatchStage::HALF_SRP, best_srp, g_ref, cfg));
        } else if (best_srp < best_erp) {
            out.records.push_back(make_record(in.synth_net, std::move(ties_erp),
                                              MatchStage::HALF_ERP, best_erp, g_ref, cfg));
        } else {
            out.records.push_back(make_record(in.synth_net, std::move(ties_srp),
                                              MatchStage::HALF_SRP, best_srp, g_ref, cfg));
        }
    } else if (!ties_erp.empty()) {
        out.records.push_back(make_record(in.synth_net, std::move(ties_erp), MatchStage::HALF_ERP,
                                          best_erp, g_ref, cfg));
    } else if (!ties_srp.empty()) {
        out.records.push_back(make_record(in.synth_net, std::move(ties_srp), MatchStage::HALF_SRP,
                                          best_srp, g_ref, cfg));
    }
    return out;
}

MatchOutcome partial_one(const MatchInput& in, const RefIndex& idx, const DesignGraph& g_ref,
                         const AlignConfig& cfg) {
    MatchOutcome out;
    if (in.srp.empty())
        return out;
    std::vector<std::uint32_t> cands;
    for (NetId p : in.srp) {
        auto it = idx.by_any_srp.find(p);
        if (it != idx.by_any_srp.end())
            cands.insert(cands.end(), it->second.begin(), it->second.end());
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (cands.empty())
        return out;

    Weight best;
    std::vector<NetId> ties;
    for (std::uint32_t i : cands) {
        const RefSig& r = idx.sigs[i];
        out.attempted_srp++;
        Weight w = calc_wt(in.srp, r.srp, cfg.wt_match_coeff) +
                   calc_wt(in.erp, r.erp, cfg.wt_match_coeff);
        if (w.is_zero())
            continue;
        if (ties.empty() || best < w) {
            best = w;
            ties.assign(1, r.ref_net);
        } else if (w == best) {
            ties.push_back(r.ref_net);
        }
    }
    if (!ties.empty())
        out.records.push_back(
            make_record(in.synth_net, std::move(ties), MatchStage::PARTIAL, best, g_ref, cfg));
    return out;
}

std::vector<MatchRecord> run_match_pass(const std::vector<MatchInput>& pending,
                                        const RefIndex& idx, const DesignGraph& g_ref,
                                        const AlignConfig& cfg,
                                        std::map<MatchStage, StageCount>& counters, bool partial) {
    std::vector<MatchOutcome> slots(pending.size());
    parallel_for(pending.size(), cfg.jobs, [&](std::size_t i) {
        slots[i] = partial ? partial_one(pending[i], idx, g_ref, cfg)
                           : full_half_one(pending[i], idx, g_ref, cfg);
    });
    std::vector<MatchRecord> recs;
    for (MatchOutcome& o : slots) {
        if (partial) {
            counters[MatchStage::PARTIAL].attempted += o.attempted_srp;
        } else {
            counters[MatchStage::FULL].attempted += o.attempted_srp;
            counters[MatchStage::HALF_SRP].attempted += o.attempted_erp;
        }
        for (MatchRecord& r : o.records) {
            counters[r.stage].matched++;
            recs.push_back(std::move(r));
        }
    }
    return recs;
}

}  // namespace

std::vector<MatchRecord> full_half_match(const std::vector<MatchInput>& pending,
                                         const RefIndex& index, const DesignGraph& g_ref,
                                         const AlignConfig& cfg,
                                         std::map<MatchStage, StageCount>& counters) {
    return run_match_pass(pending, index, g_ref, cfg, counters, false);
}

std::vector<MatchRecord> partial_match(const std::vector<MatchInput>& pending,
                                       const RefIndex& index, const DesignGraph& g_ref,
                                       const AlignConfig& cfg,
                                       std::map<MatchStage, StageCount>& counters) {
    return run_match_pass(pending, index, g_ref, cfg, counters, true);
}

AlignmentEngine::AlignmentEngine(const DesignGraph& g_ref, const DesignGraph& g_synth,
                                 AlignConfig cfg)
    : ref_(g_ref), synth_(g_synth), cfg_(cfg) {
    node_loc_.resize(synth_.nodes.size());
    for (const CellNode& c : synth_.nodes)
        if (!c.locs.empty())
            node_loc_[c.id] = c.locs.front();
}

void AlignmentEngine::anchor_stage() {
    auto t0 = Clock::now();
    anchors_ = find_anchor_points(ref_, synth_);
    for (auto [r, s] : anchors_.pairs) {
        aligned_ref_.insert(r);
        aligned_synth_.insert(s);
        pair_.emplace(s, r);
        resolved_.insert(s);
        const Net& rn = ref_.net(r);
        const Net& sn = synth_.net(s);
        if (rn.driver != kNoNode && sn.driver != kNoNode && !ref_.node(rn.driver).locs.empty() &&
            !node_loc_[sn.driver])
            node_loc_[sn.driver] = ref_.node(rn.driver).locs.front();
    }
    counters_[MatchStage::ANCHOR].attempted += anchors_.visits;
    counters_[MatchStage::ANCHOR].matched += anchors_.count();
    if (anchors_.count() > 0)
        epoch_++;
    timing_.anchor_ms += ms_since(t0);
}

void AlignmentEngine::build_reduced() {
    if (reduced_built_)
        return;
    auto t0 = Clock::now();
    std::vector<NetId> ref_anchor_nets, synth_anchor_nets;
    ref_anchor_nets.reserve(anchors_.pairs.size());
    synth_anchor_nets.reserve(anchors_.pairs.size());
    for (auto [r, s] : anchors_.pairs) {
        ref_anchor_nets.push_back(r);
        synth_anchor_nets.push_back(s);
    }
    ref_red_ = reduce_to_sequential(ref_, ref_anchor_nets);
    synth_red_ = reduce_to_sequential(synth_, synth_anchor_nets);
    reduced_built_ = true;
    timing_.traversal_ms += ms_since(t0);
}

std::vector<NetId> AlignmentEngine::translate(const DesignGraph&, const std::vector<NetId>& pts,
                                              const std::vector<NetId>* to_orig) const {
    std::vector<NetId> out;
    out.reserve(pts.size());
    for (NetId p : pts) {
        NetId orig = to_orig ? (*to_orig)[p] : p;
        auto it = pair_.find(orig);
        if (it != pair_.end())
            out.push_back(it->second);
    }
    sort_unique(out);
    return out;
}

AlignmentEngine::ScopeData AlignmentEngine::prepare_scope(bool sequential_scope) {
    auto t0 = Clock::now();
    ScopeData sd;

    const DesignGraph& sg = sequential_scope ? synth_red_.graph : synth_;
    const DesignGraph& rg = sequential_scope ? ref_red_.graph : ref_;
    const std::vector<NetId>* s_to_orig = sequential_scope ? &synth_red_.to_orig : nullptr;
    const std::vector<NetId>* r_to_orig = sequential_scope ? &ref_red_.to_orig : nullptr;

    // RP universe in scoped id space.
    std::unordered_set<NetId> synth_rps, ref_rps;
    if (sequential_scope) {
        for (NetId s : aligned_synth_) {
            auto it = synth_red_.from_orig.find(s);
            if (it != synth_red_.from_orig.end())
                synth_rps.insert(it->second);
        }
        for (NetId r : aligned_ref_) {
            auto it = ref_red_.from_orig.find(r);
            if (it != ref_red_.from_orig.end())
                ref_rps.insert(it->second);
        }
    } else {
        synth_rps = aligned_synth_;
        ref_rps = aligned_ref_;
    }

    PendingMap synth_pm = pending_nets(sg, synth_rps);
    PendingMap ref_pm = pending_nets(rg, ref_rps);
    RPMaps synth_maps = compute_all_rps(sg, synth_rps, synth_pm);
    RPMaps ref_maps = compute_all_rps(rg, ref_rps, ref_pm);
    timing_.traversal_ms += ms_since(t0);

    // Pending synth nets of this scope, original id space.
    for (NetId scoped : synth_pm.pending) {
        NetId orig = s_to_orig ? (*s_to_orig)[scoped] : scoped;
        if (resolved_.count(orig))
            continue;
        if (sequential_scope) {
            if (!synth_.net_is_seq_adjacent(orig))
                continue;
        } else {
            if (cfg_.seq_first && synth_.net_is_seq_adjacent(orig))
                continue;
        }
        MatchInput mi;
        mi.synth_net = orig;
        mi.srp = translate(sg, synth_maps.srp.at(scoped).points, s_to_orig);
        mi.erp = translate(sg, synth_maps.erp.at(scoped).points, s_to_orig);
        sd.pending.push_back(std::move(mi));
    }

    // Reference candidates of the same datatype scope.
    std::vector<RefSig> sigs;
    for (NetId scoped : ref_pm.pending) {
        NetId orig = r_to_orig ? (*r_to_orig)[scoped] : scoped;
        if (sequential_scope) {
            if (!ref_.net_is_seq_adjacent(orig))
                continue;
        } else {
            if (cfg_.seq_first && ref_.net_is_seq_adjacent(orig))
                continue;
        }
        RefSig rs;
        rs.ref_net = orig;
        const std::vector<NetId>& srp = ref_maps.srp.at(scoped).points;
        const std::vector<NetId>& erp = ref_maps.erp.at(scoped).points;
        if (r_to_orig) {
            rs.srp.reserve(srp.size());
            for (NetId p : srp)
                rs.srp.push_back((*r_to_orig)[p]);
            sort_unique(rs.srp);
            rs.erp.reserve(erp.size());
            for (NetId p : erp)
                rs.erp.push_back((*r_to_orig)[p]);
            sort_unique(rs.erp);
        } else {
            rs.srp = srp;
            rs.erp = erp;
        }
        sigs.push_back(std::move(rs));
    }
    sd.index = build_ref_index(std::move(sigs));
    return sd;
}

std::size_t AlignmentEngine::install_matches(const std::vector<MatchRecord>& recs) {
    std::unordered_set<NetId> batch;
    std::size_t installed = 0;
    for (const MatchRecord& rec : recs) {
        bool already = resolved_.count(rec.synth_net) != 0;
        if (already && !batch.count(rec.synth_net))
            continue;  // resolved in an earlier pass: idempotent no-op
        records_.push_back(rec);
        note_node_loc(rec);
        if (!batch.count(rec.synth_net)) {
            batch.insert(rec.synth_net);
            resolved_.insert(rec.synth_net);
            installed++;
            if (!rec.ref_nets.empty()) {
                aligned_synth_.insert(rec.synth_net);
                pair_.emplace(rec.synth_net, rec.ref_nets.front());
                for (NetId r : rec.ref_nets)
                    aligned_ref_.insert(r);
            }
        }
    }
    bool rp_grew = false;
    for (const MatchRecord& rec : recs)
        rp_grew |= batch.count(rec.synth_net) && !rec.ref_nets.empty();
    if (rp_grew)
        epoch_++;
    return installed;
}

void AlignmentEngine::note_node_loc(const MatchRecord& rec) {
    if (rec.stage == MatchStage::PARTIAL || rec.locs.empty())
        return;
    const Net& sn = synth_.net(rec.synth_net);
    if (sn.driver == kNoNode)
        return;
    if (!node_loc_[sn.driver])
        node_loc_[sn.driver] = rec.locs.front();
}

std::size_t AlignmentEngine::full_half_pass(bool sequential_scope) {
    if (sequential_scope)
        build_reduced();
    ScopeData sd = prepare_scope(sequential_scope);
    if (sd.pending.empty())
        return 0;
    auto t0 = Clock::now();
    auto recs = full_half_match(sd.pending, sd.index, ref_, cfg_, counters_);
    std::size_t n = install_matches(recs);
    timing_.full_half_ms += ms_since(t0);
    return n;
}

std::size_t AlignmentEngine::partial_pass(bool sequential_scope) {
    if (sequential_scope)
        build_reduced();
    ScopeData sd = prepare_scope(sequential_scope);
    if (!sequential_scope) {
        // Only annotated nets are still worth a low-confidence guess here.
        std::vector<MatchInput> keep;
        for (MatchInput& mi : sd.pending)
            if (annotated_set_.count(mi.synth_net))
                keep.push_back(std::move(mi));
        sd.pending = std::move(keep);
    }
    if (sd.pending.empty())
        return 0;
    auto t0 = Clock::now();
    auto recs = partial_match(sd.pending, sd.index, ref_, cfg_, counters_);
    std::size_t n = install_matches(recs);
    timing_.partial_ms += ms_since(t0);
    return n;
}

std::size_t AlignmentEngine::surrounding_pass() {
    bool any_loc = false;
    for (const auto& l : node_loc_)
        if (l) {
            any_loc = true;
            break;
        }
    if (!any_loc)
        return 0;

    auto t0 = Clock::now();
    PendingMap universe = pending_nets(synth_, aligned_synth_);
    RPMaps maps = compute_all_rps(synth_, aligned_synth_, universe);
    timing_.traversal_ms += ms_since(t0);

    t0 = Clock::now();
    auto node_sig = [&](NodeId n, std::vector<NetId>& srp, std::vector<NetId>& erp) -> bool {
        const CellNode& c = synth_.node(n);
        if (c.out_nets.empty())
            return false;
        for (NetId o : c.out_nets) {
            auto is = maps.srp.find(o);
            auto ie = maps.erp.find(o);
            if (is == maps.srp.end() || ie == maps.erp.end())
                return false;
            srp.insert(srp.end(), is->second.points.begin(), is->second.points.end());
            erp.insert(erp.end(), ie->second.points.begin(), ie->second.points.end());
        }
        sort_unique(srp);
        sort_unique(erp);
        return true;
    };

    auto sig_equal = [&](NodeId a, NodeId b) {
        std::vector<NetId> sa, ea, sb, eb;
        if (!node_sig(a, sa, ea) || !node_sig(b, sb, eb))
            return false;
        return sa == sb && ea == eb;
    };

    auto is_gate = [&](NodeId n) {
        CellClass c = synth_.node(n).cls;
        return c == CellClass::COMBINATIONAL || c == CellClass::SEQUENTIAL;
    };

    // Unanimous known LoC over the neighbors of a candidate supernode.
    auto unanimous = [&](const std::vector<NodeId>& members) -> std::optional<SourceLoc> {
        std::optional<SourceLoc> loc;
        for (NodeId m : members)
            for (NodeId nb : neighbors(synth_, m)) {
                if (std::find(members.begin(), members.end(), nb) != members.end())
                    continue;
                const auto& l = node_loc_[nb];
                if (!l)
                    continue;
                if (!loc)
                    loc = *l;
                else if (*loc != *l)
                    return std::nullopt;
            }
        return loc;
    };

    std::function<std::optional<SourceLoc>(std::vector<NodeId>&, int)> try_locate =
        [&](std::vector<NodeId>& members, int merges_left) -> std::optional<SourceLoc> {
        if (auto loc = unanimous(members))
            return loc;
        if (merges_left <= 0)
            return std::nullopt;
        NodeId op = members.front();
        std::vector<NodeId> cands;
        for (NodeId m : members)
            for (NodeId nb : neighbors(synth_, m))
                cands.push_back(nb);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (NodeId nb : cands) {
            if (node_loc_[nb] || !is_gate(nb))
                continue;
            if (std::find(members.begin(), members.end(), nb) != members.end())
                continue;
            if (!sig_equal(nb, op))
                continue;
            members.push_back(nb);
            if (auto loc = try_locate(members, merges_left - 1))
                return loc;
            members.pop_back();
        }
        return std::nullopt;
    };

    std::vector<MatchRecord> recs;
    std::size_t assigned_total = 0;
    for (;;) {
        std::size_t assigned = 0;
        for (NodeId n = 0; n < synth_.nodes.size(); ++n) {
            if (node_loc_[n] || !is_gate(n))
                continue;
            counters_[MatchStage::SURROUNDING].attempted++;
            std::vector<NodeId> members{n};
            auto loc = try_locate(members, cfg_.collapse_depth);
            if (!loc)
                continue;
            for (NodeId m : members) {
                node_loc_[m] = *loc;
                assigned++;
                for (NetId o : synth_.node(m).out_nets) {
                    if (resolved_.count(o) || synth_.net_is_const_driven(o))
                        continue;
                    MatchRecord rec;
                    rec.synth_net = o;
                    rec.stage = MatchStage::SURROUNDING;
                    rec.weight = Weight::sentinel_max();
                    rec.confidence = Confidence::HIGH;
                    rec.locs = {*loc};
                    recs.push_back(std::move(rec));
                }
            }
        }
        assigned_total += assigned;
        if (assigned == 0)
            break;
    }
    counters_[MatchStage::SURROUNDING].matched += recs.size();
    std::size_t n = install_matches(recs);
    timing_.surrounding_ms += ms_since(t0);
    return n;
}

bool AlignmentEngine::annotated_unresolved() const {
    for (NetId a : annotated_)
        if (!resolved_.count(a))
            return true;
    return false;
}

std::vector<SourceLoc> AlignmentEngine::ref_locs(const std::vector<NetId>& ref_nets) const {
    std::vector<SourceLoc> locs;
    for (NetId r : ref_nets) {
        const Net& rn = ref_.net(r);
        if (rn.driver != kNoNode)
            for (const SourceLoc& l : ref_.node(rn.driver).locs)
                locs.push_back(l);
    }
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    return locs;
}

AlignmentResult AlignmentEngine::run() {
    std::vector<NetId> annotated;
    for (const Net& n : synth_.nets)
        if (n.is_annotated)
            annotated.push_back(n.id);
    return run(annotated);
}

AlignmentResult AlignmentEngine::run(const std::vector<NetId>& annotated) {
    auto t_total = Clock::now();
    annotated_ = annotated;
    std::sort(annotated_.begin(), annotated_.end());
    annotated_.erase(std::unique(annotated_.begin(), annotated_.end()), annotated_.end());
    annotated_set_.clear();
    annotated_set_.insert(annotated_.begin(), annotated_.end());

    anchor_stage();

    auto has_port = [](const DesignGraph& g) {
        for (const CellNode& c : g.nodes)
            if (c.cls == CellClass::PORT_IN || c.cls == CellClass::PORT_OUT)
                return true;
        return false;
    };
    if (anchors_.count() == 0 && (!has_port(ref_) || !has_port(synth_)))
        throw Error(ErrCode::NO_ANCHORS, "no anchor points and no top-level ports");

    std::size_t outer = 0;
    for (; outer < static_cast<std::size_t>(cfg_.max_fixpoint_iters); ++outer) {
        std::size_t newly = 0;
        if (cfg_.seq_first) {
            for (int guard = 0; guard < cfg_.max_fixpoint_iters; ++guard) {
                std::size_t n = full_half_pass(true);
                newly += n;
                if (n == 0)
                    break;
            }
            if (annotated_unresolved())
                newly += partial_pass(true);
        }
        for (int guard = 0; guard < cfg_.max_fixpoint_iters; ++guard) {
            std::size_t n = full_half_pass(false);
            newly += n;
            if (n == 0)
                break;
        }
        newly += surrounding_pass();
        if (annotated_unresolved())
            newly += partial_pass(false);
        if (newly == 0)
            break;
    }

    AlignmentResult res;
    res.outer_iterations = outer + 1;
    res.stage_counts = counters_;
    res.anchor_count = anchors_.count();
    res.anchor_fraction = anchors_.anchor_fraction;
    res.class_conflicts = anchors_.class_conflicts;
    res.anchor_visits = anchors_.visits;
    res.aligned_total = resolved_.size();
    res.synth_stats = synth_.stats;
    res.synth_stats.a = aligned_synth_.size();

    for (const MatchRecord& rec : records_)
        if (cfg_.full_report || annotated_set_.count(rec.synth_net))
            res.records.push_back(rec);
    // Anchor records are synthesized on demand rather than stored per net.
    for (auto [r, s] : anchors_.pairs) {
        if (!cfg_.full_report && !annotated_set_.count(s))
            continue;
        MatchRecord rec;
        rec.synth_net = s;
        rec.ref_nets = {r};
        rec.stage = MatchStage::ANCHOR;
        rec.weight = Weight::sentinel_max();
        rec.confidence = Confidence::HIGH;
        rec.locs = ref_locs(rec.ref_nets);
        res.records.push_back(std::move(rec));
    }
    std::sort(res.records.begin(), res.records.end(),
              [](const MatchRecord& a, const MatchRecord& b) {
                  if (a.synth_net != b.synth_net)
                      return a.synth_net < b.synth_net;
                  return static_cast<int>(a.stage) < static_cast<int>(b.stage);
              });

    for (NetId a : annotated_)
        if (!resolved_.count(a))
            res.unresolved.push_back(a);

    timing_.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - t_total).count();
    res.timing = timing_;
    return res;
}

AlignmentResult run_alignment(const DesignGraph& g_ref, const DesignGraph& g_synth,
                              const std::vector<NetId>& annotated, const AlignConfig& cfg) {
    AlignmentEngine engine(g_ref, g_synth, cfg);
    return engine.run(annotated);
}

}  // namespace nlalign
