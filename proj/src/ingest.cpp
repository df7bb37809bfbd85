#include "nlalign/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlalign/normalize.hpp"

namespace nlalign {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrCode::PARSE_ERROR, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty())
        return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// One `file:line[.col]` coordinate; range suffixes were already cut off.
bool parse_loc_segment(std::string_view seg, SourceLoc& loc) {
    std::size_t colon = seg.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        return false;
    std::string_view file = seg.substr(0, colon);
    std::string_view coords = seg.substr(colon + 1);
    std::size_t dash = coords.find('-');
    if (dash != std::string_view::npos)
        coords = coords.substr(0, dash);
    std::size_t dot = coords.find('.');
    int line = 0, col = 0;
    if (dot == std::string_view::npos) {
        if (!parse_int(coords, line))
            return false;
    } else {
        if (!parse_int(coords.substr(0, dot), line) || !parse_int(coords.substr(dot + 1), col))
            return false;
    }
    if (line < 1 || col < 0)
        return false;
    loc.file = std::string(file);
    loc.line = line;
    loc.col = col;
    return true;
}

}  // namespace

std::vector<SourceLoc> parse_src_attribute(std::string_view s, std::size_t* skipped) {
    std::vector<SourceLoc> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t bar = s.find('|', pos);
        std::string_view seg =
            s.substr(pos, bar == std::string_view::npos ? std::string_view::npos : bar - pos);
        if (!seg.empty()) {
            SourceLoc loc;
            if (parse_loc_segment(seg, loc))
                out.push_back(std::move(loc));
            else if (skipped)
                (*skipped)++;
        }
        if (bar == std::string_view::npos)
            break;
        pos = bar + 1;
    }
    return out;
}

namespace {

bool attr_true(const json& v) {
    if (v.is_number_integer())
        return v.get<long long>() != 0;
    if (v.is_boolean())
        return v.get<bool>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        return s.find('1') != std::string::npos || s == "true";
    }
    return false;
}

std::string attr_string(const json& attrs, const char* key) {
    auto it = attrs.find(key);
    if (it == attrs.end() || !it->is_string())
        return {};
    return it->get<std::string>();
}

// Fallback output-pin recognition when port_directions is absent.
bool looks_like_output_pin(const std::string& port) {
    std::string up;
    for (char c : port)
        up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return up == "Y" || up == "Q" || up == "Z" || up == "O" || up.rfind("OUT", 0) == 0 ||
           up == "QN";
}

struct Flattener {
    const json& modules;
    const IngestOptions& opt;
    std::string top_name;

    std::vector<NodeDesc> nodes;
    std::vector<NetDesc> nets;
    std::map<std::string, std::size_t> net_index;  // raw name -> index into nets
    std::set<std::string> driven;                  // raw names with a driver
    std::vector<std::string> module_paths;
    std::map<std::string, std::vector<SourceLoc>> net_srcs;  // netname src attrs
    std::size_t warnings = 0;

    Flattener(const json& mods, const IngestOptions& o) : modules(mods), opt(o) {}

    std::size_t ensure_net(const std::string& name, bool keep = false) {
        auto it = net_index.find(name);
        if (it != net_index.end()) {
            if (keep)
                nets[it->second].keep = true;
            return it->second;
        }
        NetDesc nd;
        nd.raw_name = name;
        nd.keep = keep;
        nets.push_back(std::move(nd));
        net_index.emplace(name, nets.size() - 1);
        return nets.size() - 1;
    }

    std::string const_net(const std::string& value) {
        std::string name = "$const$" + value;
        if (!net_index.count(name)) {
            ensure_net(name);
            NodeDesc nd;
            nd.name = name + "$drv";
            nd.cell_type = "$const";
            nd.cls = CellClass::CONSTANT;
            nd.out_nets.push_back(name);
            nodes.push_back(std::move(nd));
            driven.insert(name);
        }
        return name;
    }

    static std::string bit_name(const std::string& base, std::size_t k, std::size_t width,
                                long long offset, bool upto) {
        if (width == 1 && offset == 0)
            return base;
        long long idx = upto ? offset + static_cast<long long>(width - 1 - k)
                             : offset + static_cast<long long>(k);
        return base + "[" + std::to_string(idx) + "]";
    }

    // Resolve per-bit local names for one module: ports win over netnames,
    // public netnames over hidden ones, then lexicographic order.
    void local_names(const json& mod, std::map<long long, std::string>& names,
                     std::map<long long, std::vector<SourceLoc>>& srcs,
                     std::map<long long, bool>& keeps) {
        if (mod.contains("netnames")) {
            std::map<long long, std::pair<int, std::string>> best;
            for (auto it = mod["netnames"].begin(); it != mod["netnames"].end(); ++it) {
                const json& nn = it.value();
                if (!nn.contains("bits") || !nn["bits"].is_array())
                    continue;
                int hide = 0;
                if (nn.contains("hide_name"))
                    hide = nn["hide_name"].is_number() ? nn["hide_name"].get<int>() : 0;
                long long offset = 0;
                bool upto = false;
                if (nn.contains("offset") && nn["offset"].is_number())
                    offset = nn["offset"].get<long long>();
                if (nn.contains("upto"))
                    upto = attr_true(nn["upto"]);
                const json& bits = nn["bits"];
                std::vector<SourceLoc> locs;
                bool keep = false;
                if (nn.contains("attributes")) {
                    std::string src = attr_string(nn["attributes"], "src");
                    if (!src.empty())
                        locs = parse_src_attribute(src, &warnings);
                    auto kit = nn["attributes"].find("keep");
                    if (kit != nn["attributes"].end())
                        keep = attr_true(*kit);
                }
                for (std::size_t k = 0; k < bits.size(); ++k) {
                    if (!bits[k].is_number())
                        continue;  // constant bits carry no name
                    long long b = bits[k].get<long long>();
                    std::string nm = bit_name(it.key(), k, bits.size(), offset, upto);
                    auto cur = best.find(b);
                    std::pair<int, std::string> cand{hide, nm};
                    if (cur == best.end() || cand < cur->second)
                        best[b] = cand;
                    if (!locs.empty())
                        srcs[b] = locs;
                    if (keep)
                        keeps[b] = true;
                }
            }
            for (auto& [b, hn] : best)
                names[b] = hn.second;
        }
        if (mod.contains("ports")) {
            for (auto it = mod["ports"].begin(); it != mod["ports"].end(); ++it) {
                const json& p = it.value();
                if (!p.contains("bits") || !p["bits"].is_array())
                    continue;
                long long offset = 0;
                if (p.contains("offset") && p["offset"].is_number())
                    offset = p["offset"].get<long long>();
                bool upto = p.contains("upto") && attr_true(p["upto"]);
                const json& bits = p["bits"];
                for (std::size_t k = 0; k < bits.size(); ++k)
                    if (bits[k].is_number())
                        names[bits[k].get<long long>()] =
                            bit_name(it.key(), k, bits.size(), offset, upto);
            }
        }
    }

    void instantiate(const std::string& mod_name, const std::string& path,
                     const std::map<long long, std::string>& bound,
                     std::vector<std::string>& stack) {
        if (std::find(stack.begin(), stack.end(), mod_name) != stack.end())
            throw Error(ErrCode::MALFORMED_JSON, "recursive instantiation of '" + mod_name + "'");
        stack.push_back(mod_name);
        const json& mod = modules.at(mod_name);

        std::map<long long, std::string> names;
        std::map<long long, std::vector<SourceLoc>> srcs;
        std::map<long long, bool> keeps;
        local_names(mod, names, srcs, keeps);

        std::string prefix = path.empty() ? "" : path + ".";

        // Global net name per local bit.
        std::map<long long, std::string> global;
        for (auto& [b, nm] : names) {
            auto bit = bound.find(b);
            std::string gname = bit != bound.end() ? bit->second : prefix + nm;
            global[b] = gname;
            bool keep = keeps.count(b) && keeps[b];
            ensure_net(gname, keep);
            if (bit == bound.end() && srcs.count(b)) {
                auto& dst = net_srcs[gname];
                if (dst.empty())
                    dst = srcs[b];
            }
        }

        auto resolve_bit = [&](const json& bit) -> std::string {
            if (bit.is_string())
                return const_net(bit.get<std::string>());
            if (!bit.is_number())
                throw Error(ErrCode::MALFORMED_JSON, "connection bit is neither id nor constant");
            long long b = bit.get<long long>();
            auto it = global.find(b);
            if (it == global.end())
                throw Error(ErrCode::UNKNOWN_BIT, "module '" + mod_name + "' references undeclared bit " +
                                                      std::to_string(b));
            return it->second;
        };

        if (mod.contains("cells")) {
            for (auto it = mod["cells"].begin(); it != mod["cells"].end(); ++it) {
                const json& cell = it.value();
                std::string type = cell.value("type", "");
                if (modules.contains(type)) {
                    // Submodule instance: bind its port bits to our nets.
                    const json& child = modules.at(type);
                    std::map<long long, std::string> child_bound;
                    if (child.contains("ports") && cell.contains("connections")) {
                        for (auto pit = child["ports"].begin(); pit != child["ports"].end();
                             ++pit) {
                            const json& cbits = pit.value()["bits"];
                            auto conn = cell["connections"].find(pit.key());
                            if (conn == cell["connections"].end())
                                continue;
                            if (conn->size() != cbits.size())
                                throw Error(ErrCode::MALFORMED_JSON,
                                            "port width mismatch on instance '" + it.key() + "'");
                            for (std::size_t k = 0; k < cbits.size(); ++k) {
                                if (!cbits[k].is_number())
                                    continue;
                                child_bound[cbits[k].get<long long>()] = resolve_bit((*conn)[k]);
                            }
                        }
                    }
                    std::string child_path = prefix + it.key();
                    module_paths.push_back(child_path);
                    instantiate(type, child_path, child_bound, stack);
                    continue;
                }

                NodeDesc nd;
                nd.name = prefix + it.key();
                nd.cell_type = type;
                nd.cls = classify_cell(type, opt.seq_types);
                nd.module = mod_name;
                if (cell.contains("attributes")) {
                    std::string src = attr_string(cell["attributes"], "src");
                    if (!src.empty())
                        nd.locs = parse_src_attribute(src, &warnings);
                }
                const json* dirs = cell.contains("port_directions") ? &cell["port_directions"]
                                                                    : nullptr;
                if (cell.contains("connections")) {
                    for (auto cit = cell["connections"].begin(); cit != cell["connections"].end();
                         ++cit) {
                        bool is_out;
                        if (dirs && dirs->contains(cit.key()))
                            is_out = (*dirs)[cit.key()].get<std::string>() == "output";
                        else
                            is_out = looks_like_output_pin(cit.key());
                        for (const json& bit : cit.value()) {
                            if (is_out) {
                                if (bit.is_string()) {
                                    warnings++;  // output tied to a constant: ignore
                                    continue;
                                }
                                std::string net = resolve_bit(bit);
                                nd.out_nets.push_back(net);
                                driven.insert(net);
                            } else {
                                nd.in_nets.push_back(resolve_bit(bit));
                            }
                        }
                    }
                }
                nodes.push_back(std::move(nd));
            }
        }

        // Top-level ports materialize as PORT nodes; instance ports dissolve.
        if (path.empty() && mod.contains("ports")) {
            for (auto pit = mod["ports"].begin(); pit != mod["ports"].end(); ++pit) {
                const json& p = pit.value();
                std::string dir = p.value("direction", "input");
                NodeDesc nd;
                nd.name = pit.key();
                nd.cell_type = "$port";
                nd.module = mod_name;
                bool input = dir == "input";
                if (dir == "inout") {
                    warnings++;
                    input = false;
                }
                nd.cls = input ? CellClass::PORT_IN : CellClass::PORT_OUT;
                for (const json& bit : p["bits"]) {
                    if (!bit.is_number())
                        continue;
                    std::string net = resolve_bit(bit);
                    if (input) {
                        nd.out_nets.push_back(net);
                        driven.insert(net);
                    } else {
                        nd.in_nets.push_back(net);
                    }
                }
                nodes.push_back(std::move(nd));
            }
        }
        stack.pop_back();
    }

    void patch_undriven() {
        for (const NetDesc& n : nets) {
            if (driven.count(n.raw_name))
                continue;
            NodeDesc nd;
            nd.name = "$undef$" + n.raw_name;
            nd.cell_type = "$undef";
            nd.cls = CellClass::CONSTANT;
            nd.out_nets.push_back(n.raw_name);
            nodes.push_back(std::move(nd));
            warnings++;
        }
    }
};

std::string pick_top(const json& modules) {
    std::vector<std::string> marked;
    std::set<std::string> instantiated;
    for (auto it = modules.begin(); it != modules.end(); ++it) {
        const json& mod = it.value();
        if (mod.contains("attributes")) {
            auto t = mod["attributes"].find("top");
            if (t != mod["attributes"].end() && attr_true(*t))
                marked.push_back(it.key());
        }
        if (mod.contains("cells"))
            for (auto cit = mod["cells"].begin(); cit != mod["cells"].end(); ++cit) {
                std::string type = cit.value().value("type", "");
                if (modules.contains(type))
                    instantiated.insert(type);
            }
    }
    if (marked.size() == 1)
        return marked.front();
    if (marked.size() > 1)
        throw Error(ErrCode::NO_TOP, "multiple modules marked top");
    std::vector<std::string> roots;
    for (auto it = modules.begin(); it != modules.end(); ++it)
        if (!instantiated.count(it.key()))
            roots.push_back(it.key());
    if (roots.size() == 1)
        return roots.front();
    throw Error(ErrCode::NO_TOP, "no module marked top and " + std::to_string(roots.size()) +
                                     " candidates");
}

}  // namespace

DesignGraph read_netlist_json(const std::string& text, Side side, const IngestOptions& opt) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrCode::MALFORMED_JSON, std::string("JSON parse failed: ") + e.what());
    }
    if (!j.is_object() || !j.contains("modules") || !j["modules"].is_object() ||
        j["modules"].empty())
        throw Error(ErrCode::MALFORMED_JSON, "missing 'modules' object");
    const json& modules = j["modules"];

    std::string top = pick_top(modules);
    Flattener fl(modules, opt);
    fl.top_name = top;
    std::vector<std::string> stack;
    fl.instantiate(top, "", {}, stack);
    fl.patch_undriven();

    std::sort(fl.module_paths.begin(), fl.module_paths.end());
    DesignGraph g = build_graph(fl.nodes, fl.nets, side, opt.policy, fl.module_paths);
    g.ingest_warnings = fl.warnings;

    // Netname src attributes land on the driver node when it has none.
    if (!fl.net_srcs.empty()) {
        std::unordered_map<std::string, NetId> by_raw;
        for (const Net& n : g.nets)
            by_raw.emplace(n.raw_name, n.id);
        for (auto& [raw, locs] : fl.net_srcs) {
            auto it = by_raw.find(raw);
            if (it == by_raw.end())
                continue;
            NodeId d = g.net(it->second).driver;
            if (d != kNoNode && g.node(d).locs.empty())
                g.node(d).locs = locs;
        }
    }
    return g;
}

DesignGraph read_netlist_json_file(const std::string& path, Side side, const IngestOptions& opt) {
    return read_netlist_json(read_file(path), side, opt);
}

namespace {

// Trailing `_<digits>` (without the closing underscore) for annotation-binding
// leniency: `tlb_pmp_io_addr_31` finds `tlb_pmp_io_addr[31]`.
std::string rewrite_trailing_index(const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1])))
        --i;
    if (i == s.size() || i < 2 || s[i - 1] != '_')
        return {};
    return s.substr(0, i - 1) + "[" + s.substr(i) + "]";
}

}  // namespace

AnnotationSet read_annotations(const std::string& json_text, DesignGraph& g) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrCode::MALFORMED_JSON, std::string("annotation parse failed: ") + e.what());
    }
    if (!j.is_array())
        throw Error(ErrCode::MALFORMED_JSON, "annotation file must be a JSON array");

    AnnotationSet out;
    for (const json& e : j) {
        if (!e.is_object() || !e.contains("net"))
            throw Error(ErrCode::MALFORMED_JSON, "annotation entry needs a 'net' field");
        AnnotationEntry entry;
        entry.module = e.value("module", "");
        entry.net = e["net"].get<std::string>();
        out.entries.push_back(entry);

        std::string full = entry.module.empty() ? entry.net : entry.module + "." + entry.net;
        std::string canon = canonicalize_name(full, g.applied_policy, g.module_paths);
        NetId id = g.find_net(canon);
        if (id == kNoNet) {
            std::string alt = rewrite_trailing_index(canon);
            if (!alt.empty())
                id = g.find_net(alt);
        }
        if (id == kNoNet) {
            out.unbound.push_back(entry);
            continue;
        }
        g.net(id).is_annotated = true;
        out.resolved.push_back(id);
    }
    std::sort(out.resolved.begin(), out.resolved.end());
    out.resolved.erase(std::unique(out.resolved.begin(), out.resolved.end()), out.resolved.end());
    return out;
}

AnnotationSet read_annotations_file(const std::string& path, DesignGraph& g) {
    return read_annotations(read_file(path), g);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    throw Error(ErrCode::PARSE_ERROR, "line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

DesignGraph read_fixture(const std::string& text, Side side, const IngestOptions& opt) {
    struct PortLine {
        bool input;
        std::string name;
    };
    std::vector<PortLine> ports;
    std::vector<NodeDesc> cells;
    std::vector<std::string> net_order;
    std::map<std::string, NetDesc> net_map;

    auto ensure_net = [&](const std::string& name) -> NetDesc& {
        auto it = net_map.find(name);
        if (it == net_map.end()) {
            NetDesc nd;
            nd.raw_name = name;
            net_order.push_back(name);
            it = net_map.emplace(name, std::move(nd)).first;
        }
        return it->second;
    };

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t)
            tok.push_back(t);
        if (tok.empty() || tok[0][0] == '#')
            continue;

        if (tok[0] == "port") {
            if (tok.size() != 3 || (tok[1] != "in" && tok[1] != "out"))
                parse_fail(line_no, "expected 'port in|out <name>'");
            ports.push_back({tok[1] == "in", tok[2]});
            ensure_net(tok[2]);
        } else if (tok[0] == "cell") {
            if (tok.size() < 4)
                parse_fail(line_no, "expected 'cell <name> <type> <class> ...'");
            NodeDesc nd;
            nd.name = tok[1];
            nd.cell_type = tok[2];
            if (tok[3] == "seq")
                nd.cls = CellClass::SEQUENTIAL;
            else if (tok[3] == "comb")
                nd.cls = CellClass::COMBINATIONAL;
            else if (tok[3] == "const")
                nd.cls = CellClass::CONSTANT;
            else
                parse_fail(line_no, "unknown cell class '" + tok[3] + "'");
            for (std::size_t i = 4; i < tok.size(); ++i) {
                const std::string& kv = tok[i];
                if (kv.rfind("loc=", 0) == 0) {
                    SourceLoc loc;
                    if (!parse_loc_segment(kv.substr(4), loc))
                        parse_fail(line_no, "bad loc '" + kv + "'");
                    nd.locs.push_back(std::move(loc));
                } else if (kv.rfind("in=", 0) == 0) {
                    for (const std::string& n : split(kv.substr(3), ','))
                        if (!n.empty()) {
                            nd.in_nets.push_back(n);
                            ensure_net(n);
                        }
                } else if (kv.rfind("out=", 0) == 0) {
                    for (const std::string& n : split(kv.substr(4), ','))
                        if (!n.empty()) {
                            nd.out_nets.push_back(n);
                            ensure_net(n);
                        }
                } else if (kv.rfind("module=", 0) == 0) {
                    nd.module = kv.substr(7);
                } else {
                    parse_fail(line_no, "unknown token '" + kv + "'");
                }
            }
            cells.push_back(std::move(nd));
        } else if (tok[0] == "net") {
            if (tok.size() < 2)
                parse_fail(line_no, "expected 'net <name> [annot] [keep]'");
            NetDesc& nd = ensure_net(tok[1]);
            for (std::size_t i = 2; i < tok.size(); ++i) {
                if (tok[i] == "annot")
                    nd.is_annotated = true;
                else if (tok[i] == "keep")
                    nd.keep = true;
                else
                    parse_fail(line_no, "unknown net flag '" + tok[i] + "'");
            }
        } else {
            parse_fail(line_no, "unknown directive '" + tok[0] + "'");
        }
    }

    std::vector<NodeDesc> nodes;
    for (const PortLine& p : ports)
        if (p.input) {
            NodeDesc nd;
            nd.name = p.name;
            nd.cell_type = "$port";
            nd.cls = CellClass::PORT_IN;
            nd.out_nets.push_back(p.name);
            nodes.push_back(std::move(nd));
        }
    for (NodeDesc& c : cells)
        nodes.push_back(std::move(c));
    for (const PortLine& p : ports)
        if (!p.input) {
            NodeDesc nd;
            nd.name = p.name;
            nd.cell_type = "$port";
            nd.cls = CellClass::PORT_OUT;
            nd.in_nets.push_back(p.name);
            nodes.push_back(std::move(nd));
        }

    std::vector<NetDesc> nets;
    nets.reserve(net_order.size());
    for (const std::string& n : net_order)
        nets.push_back(net_map.at(n));
    return build_graph(nodes, nets, side, opt.policy);
}

DesignGraph read_fixture_file(const std::string& path, Side side, const IngestOptions& opt) {
    return read_fixture(read_file(path), side, opt);
}

std::string write_fixture(const DesignGraph& g) {
    std::ostringstream os;
    for (const CellNode& c : g.nodes)
        if (c.cls == CellClass::PORT_IN)
            os << "port in " << c.name << "\n";
        else if (c.cls == CellClass::PORT_OUT)
            os << "port out " << c.name << "\n";
    for (const CellNode& c : g.nodes) {
        if (c.cls == CellClass::PORT_IN || c.cls == CellClass::PORT_OUT)
            continue;
        os << "cell " << c.name << " " << c.cell_type << " ";
        switch (c.cls) {
        case CellClass::SEQUENTIAL: os << "seq"; break;
        case CellClass::CONSTANT: os << "const"; break;
        default: os << "comb"; break;
        }
        for (const SourceLoc& l : c.locs)
            os << " loc=" << to_string(l);
        if (!c.in_nets.empty()) {
            os << " in=";
            for (std::size_t i = 0; i < c.in_nets.size(); ++i)
                os << (i ? "," : "") << g.nets[c.in_nets[i]].raw_name;
        }
        if (!c.out_nets.empty()) {
            os << " out=";
            for (std::size_t i = 0; i < c.out_nets.size(); ++i)
                os << (i ? "," : "") << g.nets[c.out_nets[i]].raw_name;
        }
        if (!c.annotated_module.empty())
            os << " module=" << c.annotated_module;
        os << "\n";
    }
    for (const Net& n : g.nets) {
        os << "net " << n.raw_name;
        if (n.is_annotated)
            os << " annot";
        if (n.keep)
            os << " keep";
        os << "\n";
    }
    return os.str();
}

}  // namespace nlalign
