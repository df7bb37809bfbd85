// -*- c++ -*-
// NL2NL evaluation: seeded rename-noise injection, accuracy scoring against
// the suffix-stripped names, noise sweeps and per-stage breakdowns.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlalign/align.hpp"
#include "nlalign/graph.hpp"

namespace nlalign {

struct NoiseSpec {
    int noise_pct = 0;  // [0, 100]
    std::uint64_t seed = 1;
    bool preserve_sequential = false;
    std::string suffix = "_changed";
};

inline const std::vector<int>& default_noise_levels() {
    static const std::vector<int> levels = {0, 20, 40, 60, 80, 90, 95, 100};
    return levels;
}

struct InjectResult {
    DesignGraph graph;            // SYNTH-side copy, locations stripped
    std::vector<NetId> renamed;   // sorted; annotated in the copy
    std::vector<NetId> eligible;  // sorted; the sampling population
};

// Deterministic-by-seed rename of floor(noise_pct * |eligible| / 100) nets:
// every path segment of a selected net gets the suffix appended.
InjectResult inject_noise(const DesignGraph& g, const NoiseSpec& spec);

struct SweepRow {
    int noise_pct = 0;
    std::uint64_t seed = 0;
    std::size_t total = 0;
    std::size_t matched = 0;
    double accuracy = 0.0;
    std::size_t anchor = 0;
    std::size_t full = 0;
    std::size_t half = 0;
    std::size_t surrounding = 0;
    std::size_t partial = 0;
    std::size_t unresolved = 0;
    double wall_ms = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

// A scored net counts as matched iff its suffix-stripped raw name equals any
// aligned ref net's raw name.
SweepRow score_nl2nl(const AlignmentResult& result, const DesignGraph& g_synth,
                     const DesignGraph& g_ref, const std::string& suffix,
                     const std::vector<NetId>& scored);

SweepTable sweep(const DesignGraph& g_ref, const std::vector<int>& levels,
                 const std::vector<std::uint64_t>& seeds, const AlignConfig& cfg,
                 const NoiseSpec& base = {});

std::string to_csv(const SweepTable& table, bool stable_output = false);

struct StageShare {
    std::string name;
    std::size_t matched = 0;
    double match_share = 0.0;
    double ms = 0.0;
    double time_share = 0.0;
};

std::vector<StageShare> stage_stats(const AlignmentResult& r);

}  // namespace nlalign
