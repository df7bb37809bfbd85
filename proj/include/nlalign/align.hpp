// -*- c++ -*-
// Staged matching engine: anchor -> sequential full+half/partial on reduced
// graphs -> combinational full+half, surrounding, partial on full graphs,
// iterated to a fixed point with confidence-tiered match records.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nlalign/graph.hpp"
#include "nlalign/normalize.hpp"
#include "nlalign/resolve.hpp"

namespace nlalign {

enum class MatchStage { ANCHOR, FULL, HALF_SRP, HALF_ERP, SURROUNDING, PARTIAL };
enum class Confidence { HIGH, MEDIUM, LOW };
enum class TiePolicy { ALL_TIES, LEX_FIRST };

std::string_view to_string(MatchStage s);
std::string_view to_string(Confidence c);
Confidence stage_confidence(MatchStage s);

// Match weight. Sums of calc_wt values are ordered as tuples of
// (number of SENTINEL_MAX components, finite remainder).
struct Weight {
    int sentinels = 0;
    double finite = 0.0;

    static Weight sentinel_max() { return {1, 0.0}; }
    bool is_zero() const { return sentinels == 0 && finite == 0.0; }

    Weight operator+(const Weight& o) const { return {sentinels + o.sentinels, finite + o.finite}; }
    bool operator==(const Weight& o) const = default;
    bool operator<(const Weight& o) const {
        if (sentinels != o.sentinels)
            return sentinels < o.sentinels;
        return finite < o.finite;
    }
};

std::string to_string(const Weight& w);

// (wt_match_coeff * matches) / mismatches over the synth-side set, with
// SENTINEL_MAX when every synth member matches and zero on no overlap.
Weight calc_wt(const std::vector<NetId>& synth_set, const std::vector<NetId>& ref_set,
               double wt_match_coeff);
Weight calc_wt(const RPSet& synth_set, const RPSet& ref_set, double wt_match_coeff);

struct MatchRecord {
    NetId synth_net = kNoNet;
    std::vector<NetId> ref_nets;  // empty only for surrounding (location-only) records
    MatchStage stage = MatchStage::FULL;
    Weight weight;
    std::vector<SourceLoc> locs;
    Confidence confidence = Confidence::HIGH;
};

struct StageCount {
    std::size_t attempted = 0;  // candidate pairs examined
    std::size_t matched = 0;    // synth nets matched
};

struct StageTiming {
    double anchor_ms = 0.0;
    double traversal_ms = 0.0;
    double full_half_ms = 0.0;
    double surrounding_ms = 0.0;
    double partial_ms = 0.0;
    double total_ms = 0.0;
};

struct AlignConfig {
    double wt_match_coeff = 5.0;
    bool seq_first = true;
    int max_fixpoint_iters = 16;
    int collapse_depth = 2;
    TiePolicy tie_policy = TiePolicy::ALL_TIES;
    std::size_t visit_budget = kDefaultVisitBudget;
    int jobs = 1;
    bool full_report = false;
};

struct AlignmentResult {
    std::vector<MatchRecord> records;  // annotated nets; every aligned net in full-report mode
    std::vector<NetId> unresolved;     // annotated nets with no record
    StageTiming timing;
    std::map<MatchStage, StageCount> stage_counts;
    std::size_t anchor_count = 0;
    double anchor_fraction = 0.0;
    std::size_t class_conflicts = 0;
    std::size_t anchor_visits = 0;
    std::size_t aligned_total = 0;
    std::size_t outer_iterations = 0;
    GraphStats synth_stats;  // snapshot with .a = aligned_total
};

// One pending synth net prepared for matching: RP signatures translated into
// reference-net-id space through the current resolved-pair map.
struct MatchInput {
    NetId synth_net = kNoNet;     // original synth net id
    std::vector<NetId> srp, erp;  // sorted, reference id space
};

struct RefSig {
    NetId ref_net = kNoNet;  // original ref net id
    std::vector<NetId> srp, erp;
};

struct VecHash {
    std::size_t operator()(const std::vector<NetId>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (NetId x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct RefIndex {
    std::vector<RefSig> sigs;
    std::unordered_map<std::vector<NetId>, std::vector<std::uint32_t>, VecHash> by_srp;
    std::unordered_map<std::vector<NetId>, std::vector<std::uint32_t>, VecHash> by_erp;
    std::unordered_map<NetId, std::vector<std::uint32_t>> by_any_srp;
};

RefIndex build_ref_index(std::vector<RefSig> sigs);

// Listing-style full+half pass against a frozen index. Emits FULL records for
// exact SRP+ERP matches, otherwise the best-weighted half variant(s).
std::vector<MatchRecord> full_half_match(const std::vector<MatchInput>& pending,
                                         const RefIndex& index, const DesignGraph& g_ref,
                                         const AlignConfig& cfg,
                                         std::map<MatchStage, StageCount>& counters);

// Best combined SRP+ERP weight over ref nets sharing at least one SRP.
std::vector<MatchRecord> partial_match(const std::vector<MatchInput>& pending,
                                       const RefIndex& index, const DesignGraph& g_ref,
                                       const AlignConfig& cfg,
                                       std::map<MatchStage, StageCount>& counters);

class AlignmentEngine {
public:
    AlignmentEngine(const DesignGraph& g_ref, const DesignGraph& g_synth, AlignConfig cfg);

    AlignmentResult run();  // annotated nets taken from the synth graph flags
    AlignmentResult run(const std::vector<NetId>& annotated);

    // Individual stages, exposed for testing and instrumentation.
    void anchor_stage();
    std::size_t full_half_pass(bool sequential_scope);
    std::size_t partial_pass(bool sequential_scope);
    std::size_t surrounding_pass();
    std::size_t install_matches(const std::vector<MatchRecord>& recs);

    const AnchorMap& anchors() const { return anchors_; }
    const std::unordered_set<NetId>& aligned_synth() const { return aligned_synth_; }
    const std::unordered_set<NetId>& resolved_synth() const { return resolved_; }
    const std::unordered_map<NetId, NetId>& pair_map() const { return pair_; }
    std::uint64_t epoch() const { return epoch_; }
    const std::optional<SourceLoc>& node_loc(NodeId n) const { return node_loc_[n]; }

private:
    struct ScopeData {
        std::vector<MatchInput> pending;
        RefIndex index;
    };
    ScopeData prepare_scope(bool sequential_scope);
    std::vector<NetId> translate(const DesignGraph& g, const std::vector<NetId>& synth_pts,
                                 const std::vector<NetId>* to_orig) const;
    void note_node_loc(const MatchRecord& rec);
    std::vector<SourceLoc> ref_locs(const std::vector<NetId>& ref_nets) const;
    bool annotated_unresolved() const;

    const DesignGraph& ref_;
    const DesignGraph& synth_;
    AlignConfig cfg_;

    AnchorMap anchors_;
    std::unordered_set<NetId> aligned_synth_;  // synth RPs
    std::unordered_set<NetId> aligned_ref_;    // ref RPs
    std::unordered_map<NetId, NetId> pair_;    // synth RP -> ref counterpart
    std::unordered_set<NetId> resolved_;       // aligned or surrounding-located
    std::vector<MatchRecord> records_;
    std::vector<std::optional<SourceLoc>> node_loc_;
    std::vector<NetId> annotated_;
    std::unordered_set<NetId> annotated_set_;
    std::uint64_t epoch_ = 0;

    ReducedGraph ref_red_, synth_red_;
    bool reduced_built_ = false;
    void build_reduced();

    std::map<MatchStage, StageCount> counters_;
    StageTiming timing_;
};

AlignmentResult run_alignment(const DesignGraph& g_ref, const DesignGraph& g_synth,
                              const std::vector<NetId>& annotated, const AlignConfig& cfg);

}  // namespace nlalign
