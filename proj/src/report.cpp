#include "nlalign/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace nlalign {

namespace {

// When every location in the report shares one file, rows print bare
// "[line]" / "[line.col]" the way single-Vref logs do.
bool single_file(const AlignmentResult& result, const DesignGraph& g_ref) {
    std::string file;
    auto visit = [&](const SourceLoc& l) {
        if (file.empty())
            file = l.file;
        return file == l.file;
    };
    for (const MatchRecord& rec : result.records) {
        for (const SourceLoc& l : rec.locs)
            if (!visit(l))
                return false;
        for (NetId r : rec.ref_nets) {
            const Net& rn = g_ref.net(r);
            if (rn.driver == kNoNode)
                continue;
            for (const SourceLoc& l : g_ref.node(rn.driver).locs)
                if (!visit(l))
                    return false;
        }
    }
    return true;
}

std::string loc_string(const SourceLoc& l, bool omit_file) {
    std::string s = "[";
    if (!omit_file)
        s += l.file + ":";
    s += std::to_string(l.line);
    if (l.col > 0)
        s += "." + std::to_string(l.col);
    s += "]";
    return s;
}

std::string module_of(const DesignGraph& g, NetId n) {
    const Net& net = g.net(n);
    if (net.driver == kNoNode)
        return {};
    return g.node(net.driver).annotated_module;
}

}  // namespace

std::vector<ReportRow> build_rows(const AlignmentResult& result, const DesignGraph& g_ref,
                                  const DesignGraph& g_synth) {
    bool omit_file = single_file(result, g_ref);
    std::vector<ReportRow> rows;
    for (const MatchRecord& rec : result.records) {
        const std::string& annotated = g_synth.net(rec.synth_net).raw_name;
        if (rec.ref_nets.empty()) {
            ReportRow row;
            row.annotated = annotated;
            row.ref_name = "<unnamed edge>";
            row.module = module_of(g_synth, rec.synth_net);
            for (const SourceLoc& l : rec.locs)
                row.locs.push_back(loc_string(l, omit_file));
            row.stage = std::string(to_string(rec.stage));
            row.confidence = std::string(to_string(rec.confidence));
            rows.push_back(std::move(row));
            continue;
        }
        for (NetId r : rec.ref_nets) {
            ReportRow row;
            row.annotated = annotated;
            row.ref_name = g_ref.net(r).raw_name;
            row.module = module_of(g_ref, r);
            const Net& rn = g_ref.net(r);
            if (rn.driver != kNoNode) {
                std::vector<SourceLoc> locs = g_ref.node(rn.driver).locs;
                std::sort(locs.begin(), locs.end());
                locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
                for (const SourceLoc& l : locs)
                    row.locs.push_back(loc_string(l, omit_file));
            }
            row.stage = std::string(to_string(rec.stage));
            row.confidence = std::string(to_string(rec.confidence));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string ref_cell(const ReportRow& row) {
    std::string s = row.ref_name;
    if (!row.module.empty())
        s += " (module " + row.module + ")";
    return s;
}

std::string locs_cell(const ReportRow& row) {
    std::string s;
    for (std::size_t i = 0; i < row.locs.size(); ++i)
        s += (i ? " " : "") + row.locs[i];
    return s;
}

}  // namespace

std::string render_text(const AlignmentResult& result, const DesignGraph& g_ref,
                        const DesignGraph& g_synth) {
    std::vector<ReportRow> rows = build_rows(result, g_ref, g_synth);
    const std::string h0 = "Annotated node", h1 = "net name in Vref", h2 = "LoC in Vref";
    std::size_t w0 = h0.size(), w1 = h1.size(), w2 = h2.size();
    for (const ReportRow& r : rows) {
        w0 = std::max(w0, r.annotated.size());
        w1 = std::max(w1, ref_cell(r).size());
        w2 = std::max(w2, locs_cell(r).size());
    }
    std::ostringstream os;
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    os << pad(h0, w0) << " : " << pad(h1, w1) << " : " << pad(h2, w2) << " : stage : confidence\n";
    for (const ReportRow& r : rows)
        os << pad(r.annotated, w0) << " : " << pad(ref_cell(r), w1) << " : "
           << pad(locs_cell(r), w2) << " : " << r.stage << " : " << r.confidence << "\n";
    for (NetId u : result.unresolved)
        os << "# unresolved: " << g_synth.net(u).raw_name << "\n";
    return os.str();
}

std::string render_tsv(const AlignmentResult& result, const DesignGraph& g_ref,
                       const DesignGraph& g_synth) {
    std::vector<ReportRow> rows = build_rows(result, g_ref, g_synth);
    std::ostringstream os;
    os << "annotated\tref_net\tmodule\tlocs\tstage\tconfidence\n";
    for (const ReportRow& r : rows)
        os << r.annotated << "\t" << r.ref_name << "\t" << r.module << "\t" << locs_cell(r) << "\t"
           << r.stage << "\t" << r.confidence << "\n";
    for (NetId u : result.unresolved)
        os << g_synth.net(u).raw_name << "\t\t\t\tUNRESOLVED\t\n";
    return os.str();
}

std::string render_json(const AlignmentResult& result, const DesignGraph& g_ref,
                        const DesignGraph& g_synth) {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const MatchRecord& rec : result.records) {
        nlohmann::json r;
        r["synth_id"] = rec.synth_net;
        r["synth_net"] = g_synth.net(rec.synth_net).raw_name;
        r["stage"] = std::string(to_string(rec.stage));
        r["confidence"] = std::string(to_string(rec.confidence));
        r["weight"] = {{"sentinels", rec.weight.sentinels}, {"finite", rec.weight.finite}};
        r["ref_nets"] = nlohmann::json::array();
        for (NetId ref : rec.ref_nets) {
            r["ref_nets"].push_back({{"id", ref},
                                     {"name", g_ref.net(ref).raw_name},
                                     {"module", module_of(g_ref, ref)}});
        }
        r["locs"] = nlohmann::json::array();
        for (const SourceLoc& l : rec.locs)
            r["locs"].push_back({{"file", l.file}, {"line", l.line}, {"col", l.col}});
        j["records"].push_back(std::move(r));
    }
    j["unresolved"] = nlohmann::json::array();
    for (NetId u : result.unresolved)
        j["unresolved"].push_back(g_synth.net(u).raw_name);
    j["stats"] = {{"anchors", result.anchor_count},
                  {"anchor_fraction", result.anchor_fraction},
                  {"aligned", result.aligned_total},
                  {"nets", result.synth_stats.m},
                  {"iterations", result.outer_iterations}};
    return j.dump(2) + "\n";
}

}  // namespace nlalign
