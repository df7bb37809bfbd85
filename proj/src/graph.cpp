#include "nlalign/graph.hpp"

#include <algorithm>
#include <cctype>

#include "nlalign/normalize.hpp"

namespace nlalign {

std::string to_string(const SourceLoc& loc) {
    std::string s = loc.file + ":" + std::to_string(loc.line);
    if (loc.col > 0)
        s += "." + std::to_string(loc.col);
    return s;
}

std::string_view to_string(CellClass cls) {
    switch (cls) {
    case CellClass::SEQUENTIAL: return "seq";
    case CellClass::COMBINATIONAL: return "comb";
    case CellClass::PORT_IN: return "port_in";
    case CellClass::PORT_OUT: return "port_out";
    case CellClass::CONSTANT: return "const";
    }
    return "?";
}

bool DesignGraph::net_is_seq_adjacent(NetId id) const {
    const Net& n = nets.at(id);
    if (n.driver != kNoNode && nodes[n.driver].cls == CellClass::SEQUENTIAL)
        return true;
    for (NodeId s : n.sinks)
        if (nodes[s].cls == CellClass::SEQUENTIAL)
            return true;
    return false;
}

bool DesignGraph::net_touches_port(NetId id) const {
    const Net& n = nets.at(id);
    if (n.driver != kNoNode && nodes[n.driver].cls == CellClass::PORT_IN)
        return true;
    for (NodeId s : n.sinks)
        if (nodes[s].cls == CellClass::PORT_OUT)
            return true;
    return false;
}

const SeqTypes& SeqTypes::defaults() {
    static const SeqTypes def = [] {
        SeqTypes t;
        // Yosys word-level and gate-level sequential primitives.
        t.exact = {"$dff",    "$dffe",    "$adff",    "$adffe",   "$sdff",   "$sdffe",
                   "$sdffce", "$dffsr",   "$dffsre",  "$aldff",   "$aldffe", "$dlatch",
                   "$adlatch", "$dlatchsr", "$sr",     "$ff",      "$mem",    "$mem_v2",
                   "$memrd",  "$memrd_v2", "$memwr",  "$memwr_v2", "$meminit", "$meminit_v2"};
        // Gate-level cells are matched by prefix via patterns below ($_DFF_P_ etc),
        // liberty cells by family substrings (sky130 dfxtp, saed dffx, ...).
        t.patterns = {"$_dff", "$_sdff", "$_aldff", "$_dlatch", "$_sr_", "$_ff_",
                      "dff",   "dlatch", "latch",   "dfxt",     "dfrt",  "dfst",
                      "dfbb",  "dfrb",   "dfsb",    "dlxt",     "dlrt",  "dlrb",
                      "dlclk", "mem"};
        return t;
    }();
    return def;
}

bool SeqTypes::matches(std::string_view cell_type) const {
    std::string lower(cell_type);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (exact.count(lower))
        return true;
    for (const std::string& p : patterns)
        if (lower.find(p) != std::string::npos)
            return true;
    return false;
}

CellClass classify_cell(std::string_view cell_type, const SeqTypes& seq_types) {
    return seq_types.matches(cell_type) ? CellClass::SEQUENTIAL : CellClass::COMBINATIONAL;
}

DesignGraph build_graph(const std::vector<NodeDesc>& node_descs,
                        const std::vector<NetDesc>& net_descs, Side side, SepPolicy policy,
                        const std::vector<std::string>& module_vocab) {
    DesignGraph g;
    g.side = side;

    std::unordered_map<std::string, NetId> by_raw;
    g.nets.reserve(net_descs.size());
    for (const NetDesc& nd : net_descs) {
        if (by_raw.count(nd.raw_name))
            throw Error(ErrCode::DUPLICATE_NAME, "duplicate net name '" + nd.raw_name + "'");
        Net n;
        n.id = static_cast<NetId>(g.nets.size());
        n.raw_name = nd.raw_name;
        n.bit = nd.bit;
        n.is_annotated = nd.is_annotated;
        n.keep = nd.keep;
        by_raw.emplace(nd.raw_name, n.id);
        g.nets.push_back(std::move(n));
    }

    g.nodes.reserve(node_descs.size());
    for (const NodeDesc& nd : node_descs) {
        CellNode c;
        c.id = static_cast<NodeId>(g.nodes.size());
        c.name = nd.name;
        c.cell_type = nd.cell_type;
        c.cls = nd.cls;
        c.locs = nd.locs;
        c.annotated_module = nd.module;
        auto resolve = [&](const std::string& name) -> NetId {
            auto it = by_raw.find(name);
            if (it == by_raw.end())
                throw Error(ErrCode::DANGLING_REF,
                            "cell '" + nd.name + "' references unknown net '" + name + "'");
            return it->second;
        };
        for (const std::string& in : nd.in_nets) {
            NetId id = resolve(in);
            c.in_nets.push_back(id);
            g.nets[id].sinks.push_back(c.id);
        }
        for (const std::string& out : nd.out_nets) {
            NetId id = resolve(out);
            c.out_nets.push_back(id);
            Net& n = g.nets[id];
            if (n.driver != kNoNode)
                throw Error(ErrCode::MULTI_DRIVER, "net '" + n.raw_name + "' has multiple drivers");
            n.driver = c.id;
        }
        g.nodes.push_back(std::move(c));
    }

    for (const Net& n : g.nets)
        if (n.driver == kNoNode)
            throw Error(ErrCode::DANGLING_REF, "net '" + n.raw_name + "' has no driver");

    g.module_paths = module_vocab;
    std::sort(g.module_paths.begin(), g.module_paths.end());
    normalize_graph(g, policy, g.module_paths);
    g.stats = compute_stats(g);
    return g;
}

std::vector<NodeId> neighbors(const DesignGraph& g, NodeId nid) {
    const CellNode& c = g.node(nid);
    std::vector<NodeId> out;
    for (NetId in : c.in_nets) {
        NodeId d = g.nets[in].driver;
        if (d != kNoNode && d != nid)
            out.push_back(d);
    }
    for (NetId on : c.out_nets)
        for (NodeId s : g.nets[on].sinks)
            if (s != nid)
                out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GraphStats compute_stats(const DesignGraph& g) {
    GraphStats st;
    st.m = g.nets.size();
    for (const Net& n : g.nets) {
        CellClass drv = n.driver == kNoNode ? CellClass::CONSTANT : g.nodes[n.driver].cls;
        if (drv == CellClass::PORT_IN || drv == CellClass::CONSTANT) {
            st.m_port++;
        } else if (g.net_is_seq_adjacent(n.id)) {
            st.m_seq++;
        } else {
            st.m_comb++;
        }
    }
    std::size_t pins = 0;
    for (const CellNode& c : g.nodes)
        pins += c.in_nets.size() + c.out_nets.size();
    st.k_avg = g.nodes.empty() ? 0.0 : static_cast<double>(pins) / static_cast<double>(g.nodes.size());
    return st;
}

}  // namespace nlalign
