// -*- c++ -*-
// Net-name canonicalization across tool nomenclatures, and anchor-point
// discovery between the reference and synthesized graphs.

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlalign/graph.hpp"

namespace nlalign {

// One-to-one net correspondence keyed by canonical name. Pairs are
// (ref net, synth net), sorted by ref id.
struct AnchorMap {
    std::vector<std::pair<NetId, NetId>> pairs;
    std::unordered_map<NetId, NetId> ref_to_synth;
    std::unordered_map<NetId, NetId> synth_to_ref;
    double anchor_fraction = 0.0;   // count / synth stats.m
    std::size_t class_conflicts = 0;  // name matched but driver class differed
    std::size_t visits = 0;           // net visits spent; <= 2*(m_ref + m_synth)

    std::size_t count() const { return pairs.size(); }
    bool has_synth(NetId s) const { return synth_to_ref.count(s) != 0; }
    bool has_ref(NetId r) const { return ref_to_synth.count(r) != 0; }
};

// Applies, in order: trailing `_BAR` -> `~` polarity marker, trailing
// `_<digits>_` -> `[<digits>]`, hierarchy separators -> `.` per policy,
// collapse of repeated separators. Idempotent.
std::string canonicalize_name(std::string_view raw, SepPolicy policy,
                              const std::vector<std::string>& module_vocab = {});

// Recomputes canon names, the name index and ambiguity flags with a new
// separator policy (INFER uses the reference graph's module-path vocabulary).
void normalize_graph(DesignGraph& g, SepPolicy policy,
                     const std::vector<std::string>& module_vocab);

AnchorMap find_anchor_points(const DesignGraph& g_ref, const DesignGraph& g_synth);

}  // namespace nlalign
