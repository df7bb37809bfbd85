// -*- c++ -*-
// nlalign -- aligning flattened gate-level netlists back to source code
// Core graph model: cells, bit-level nets, and per-graph statistics.

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nlalign {

using NodeId = std::uint32_t;
using NetId = std::uint32_t;

inline constexpr NodeId kNoNode = 0xffffffffu;
inline constexpr NetId kNoNet = 0xffffffffu;

enum class ErrCode {
    MULTI_DRIVER,
    DANGLING_REF,
    DUPLICATE_NAME,
    MALFORMED_JSON,
    UNKNOWN_BIT,
    NO_TOP,
    PARSE_ERROR,
    NO_ANCHORS,
};

struct Error : std::runtime_error {
    ErrCode code;
    Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// One source location parsed from a `src` attribute. Ordering is
// (file, line, col) lexicographic, which the default comparison gives us.
struct SourceLoc {
    std::string file;
    int line = 1;
    int col = 0;

    auto operator<=>(const SourceLoc&) const = default;
};

std::string to_string(const SourceLoc& loc);

enum class CellClass : std::uint8_t {
    SEQUENTIAL,
    COMBINATIONAL,
    PORT_IN,
    PORT_OUT,
    CONSTANT,
};

std::string_view to_string(CellClass cls);

enum class Side { REF, SYNTH };

// Hierarchy-separator handling for canonical net names.
enum class SepPolicy { DOT, UNDERSCORE, INFER };

struct CellNode {
    NodeId id = kNoNode;
    std::string name;       // flattened instance path of the cell
    std::string cell_type;  // library / primitive name
    CellClass cls = CellClass::COMBINATIONAL;
    std::vector<SourceLoc> locs;
    std::vector<NetId> in_nets;
    std::vector<NetId> out_nets;
    std::string annotated_module;  // module the cell originated from
};

struct Net {
    NetId id = kNoNet;
    std::string raw_name;    // as ingested
    std::string canon_name;  // post-normalization, unique per graph
    int bit = 0;
    NodeId driver = kNoNode;
    std::vector<NodeId> sinks;
    bool is_annotated = false;
    bool keep = false;             // `keep`/`dont_touch` attribute seen at ingest
    bool canon_ambiguous = false;  // canonicalization collided; excluded from anchoring
};

struct GraphStats {
    std::size_t m = 0;       // nets
    std::size_t m_seq = 0;   // sequential-adjacent nets (port/const-driven excluded)
    std::size_t m_comb = 0;  // combinational nets
    std::size_t m_port = 0;  // port- or constant-driven nets
    std::size_t a = 0;       // aligned so far (filled by the alignment engine)
    double k_avg = 0.0;      // average pin degree per node
};

// Flattened design graph. Immutable once built; normalize_graph() is the one
// sanctioned post-construction step (still part of the ingest pipeline).
struct DesignGraph {
    Side side = Side::REF;
    std::vector<CellNode> nodes;
    std::vector<Net> nets;
    std::unordered_map<std::string, NetId> name_index;  // canon_name -> net
    std::vector<std::string> module_paths;              // instance-path vocabulary, sorted
    SepPolicy applied_policy = SepPolicy::DOT;
    GraphStats stats;
    std::size_t ingest_warnings = 0;

    const Net& net(NetId id) const { return nets.at(id); }
    Net& net(NetId id) { return nets.at(id); }
    const CellNode& node(NodeId id) const { return nodes.at(id); }
    CellNode& node(NodeId id) { return nodes.at(id); }

    bool net_is_const_driven(NetId id) const {
        const Net& n = nets.at(id);
        return n.driver != kNoNode && nodes[n.driver].cls == CellClass::CONSTANT;
    }
    bool net_is_port_driven(NetId id) const {
        const Net& n = nets.at(id);
        return n.driver != kNoNode && nodes[n.driver].cls == CellClass::PORT_IN;
    }
    bool net_is_seq_adjacent(NetId id) const;
    bool net_touches_port(NetId id) const;

    NetId find_net(std::string_view canon) const {
        auto it = name_index.find(std::string(canon));
        return it == name_index.end() ? kNoNet : it->second;
    }
};

// Descriptor form consumed by build_graph. Nets are referenced by raw name.
struct NodeDesc {
    std::string name;
    std::string cell_type;
    CellClass cls = CellClass::COMBINATIONAL;
    std::vector<SourceLoc> locs;
    std::vector<std::string> in_nets;
    std::vector<std::string> out_nets;
    std::string module;
};

struct NetDesc {
    std::string raw_name;
    int bit = 0;
    bool is_annotated = false;
    bool keep = false;
};

// Sequential cell recognition: exact primitive names plus lowercase substring
// patterns covering liberty-style flop/latch families.
struct SeqTypes {
    std::unordered_set<std::string> exact;
    std::vector<std::string> patterns;

    static const SeqTypes& defaults();
    bool matches(std::string_view cell_type) const;
};

CellClass classify_cell(std::string_view cell_type, const SeqTypes& seq_types);

DesignGraph build_graph(const std::vector<NodeDesc>& nodes, const std::vector<NetDesc>& nets,
                        Side side, SepPolicy policy = SepPolicy::DOT,
                        const std::vector<std::string>& module_vocab = {});

std::vector<NodeId> neighbors(const DesignGraph& g, NodeId n);

GraphStats compute_stats(const DesignGraph& g);

}  // namespace nlalign
