//
// nlalign -- map annotated nets of a synthesized netlist back to reference
// nets and source locations, plus the rename-noise evaluation harness.
//

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nlalign/align.hpp"
#include "nlalign/evalkit.hpp"
#include "nlalign/graph.hpp"
#include "nlalign/ingest.hpp"
#include "nlalign/normalize.hpp"
#include "nlalign/report.hpp"

using namespace nlalign;

namespace {

SepPolicy parse_policy(const std::string& s) {
    if (s == "dot")
        return SepPolicy::DOT;
    if (s == "underscore")
        return SepPolicy::UNDERSCORE;
    return SepPolicy::INFER;
}

DesignGraph load_design(const std::string& path, Side side, SepPolicy policy) {
    std::string text = read_file(path);
    IngestOptions opt;
    opt.policy = policy;
    std::size_t i = text.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && text[i] == '{')
        return read_netlist_json(text, side, opt);
    return read_fixture(text, side, opt);
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error(ErrCode::PARSE_ERROR, "cannot write '" + out_path + "'");
    out << content;
}

void print_timing(const AlignmentResult& res) {
    std::fprintf(stderr, "%-12s %8s %7s %10s %7s\n", "stage", "matched", "share", "ms", "t-share");
    for (const StageShare& s : stage_stats(res))
        std::fprintf(stderr, "%-12s %8zu %6.1f%% %10.2f %6.1f%%\n", s.name.c_str(), s.matched,
                     100.0 * s.match_share, s.ms, 100.0 * s.time_share);
    std::fprintf(stderr, "%-12s %8s %7s %10.2f\n", "total", "", "", res.timing.total_ms);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoi(item));
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoull(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlalign: gate-level netlist to source alignment"};
    app.require_subcommand(1);

    std::string ref_path, synth_path, annot_path, out_path;
    std::string format = "text", sep = "dot", tie = "all";
    std::string levels_str, seeds_str, suffix = "_changed";
    int jobs = 1;
    bool timing = false, full_report = false, stable = false, preserve_seq = false;

    CLI::App* cmd_align = app.add_subcommand("align", "align an annotated netlist to a reference");
    cmd_align->add_option("--ref", ref_path, "reference design (Yosys JSON or GNL)")->required();
    cmd_align->add_option("--synth", synth_path, "synthesized design")->required();
    cmd_align->add_option("--annot", annot_path, "annotation JSON: [{\"module\",\"net\"}...]");
    cmd_align->add_option("--format", format, "text|tsv|json")
        ->check(CLI::IsMember({"text", "tsv", "json"}));
    cmd_align->add_option("--sep-policy", sep, "dot|underscore|infer")
        ->check(CLI::IsMember({"dot", "underscore", "infer"}));
    cmd_align->add_option("--tie", tie, "all|lex")->check(CLI::IsMember({"all", "lex"}));
    cmd_align->add_option("--jobs", jobs, "worker threads");
    cmd_align->add_option("--out", out_path, "write report to file");
    cmd_align->add_flag("--timing", timing, "print per-stage timing to stderr");
    cmd_align->add_flag("--full-report", full_report, "emit records for every aligned net");
    cmd_align->add_flag("--stable-output", stable, "zero wall-clock fields in outputs");

    CLI::App* cmd_nl2nl = app.add_subcommand("nl2nl", "noise-robustness sweep against a renamed copy");
    cmd_nl2nl->add_option("--ref", ref_path, "reference design")->required();
    cmd_nl2nl->add_option("--levels", levels_str, "comma-separated noise percentages");
    cmd_nl2nl->add_option("--seeds", seeds_str, "comma-separated PRNG seeds (default 1)");
    cmd_nl2nl->add_flag("--preserve-seq", preserve_seq, "never rename sequential-driven nets");
    cmd_nl2nl->add_option("--suffix", suffix, "rename suffix");
    cmd_nl2nl->add_option("--sep-policy", sep, "dot|underscore|infer")
        ->check(CLI::IsMember({"dot", "underscore", "infer"}));
    cmd_nl2nl->add_option("--tie", tie, "all|lex")->check(CLI::IsMember({"all", "lex"}));
    cmd_nl2nl->add_option("--jobs", jobs, "worker threads");
    cmd_nl2nl->add_option("--out", out_path, "write CSV to file");
    cmd_nl2nl->add_flag("--stable-output", stable, "zero wall-clock fields in outputs");

    CLI::App* cmd_inspect = app.add_subcommand("inspect", "print graph statistics");
    cmd_inspect->add_option("--ref", ref_path, "design to inspect")->required();
    cmd_inspect->add_option("--sep-policy", sep, "dot|underscore|infer")
        ->check(CLI::IsMember({"dot", "underscore", "infer"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        SepPolicy policy = parse_policy(sep);

        if (app.got_subcommand(cmd_align)) {
            DesignGraph ref = load_design(ref_path, Side::REF, policy);
            DesignGraph synth = load_design(synth_path, Side::SYNTH, SepPolicy::DOT);
            normalize_graph(synth, policy, ref.module_paths);

            std::vector<NetId> annotated;
            AnnotationSet annots;
            if (!annot_path.empty()) {
                annots = read_annotations_file(annot_path, synth);
                annotated = annots.resolved;
            } else {
                for (const Net& n : synth.nets)
                    if (n.is_annotated)
                        annotated.push_back(n.id);
            }
            for (const AnnotationEntry& e : annots.unbound)
                std::fprintf(stderr, "warning: unbound annotation %s/%s\n", e.module.c_str(),
                             e.net.c_str());

            AlignConfig cfg;
            cfg.tie_policy = tie == "lex" ? TiePolicy::LEX_FIRST : TiePolicy::ALL_TIES;
            cfg.jobs = jobs;
            cfg.full_report = full_report;
            AlignmentResult res = run_alignment(ref, synth, annotated, cfg);

            std::string report;
            if (format == "json")
                report = render_json(res, ref, synth);
            else if (format == "tsv")
                report = render_tsv(res, ref, synth);
            else
                report = render_text(res, ref, synth);
            write_output(out_path, report);
            if (timing)
                print_timing(res);
            return (res.unresolved.empty() && annots.unbound.empty()) ? 0 : 3;
        }

        if (app.got_subcommand(cmd_nl2nl)) {
            DesignGraph ref = load_design(ref_path, Side::REF, policy);
            std::vector<int> levels =
                levels_str.empty() ? default_noise_levels() : parse_int_list(levels_str);
            std::vector<std::uint64_t> seeds =
                seeds_str.empty() ? std::vector<std::uint64_t>{1} : parse_seed_list(seeds_str);
            AlignConfig cfg;
            cfg.tie_policy = tie == "lex" ? TiePolicy::LEX_FIRST : TiePolicy::ALL_TIES;
            cfg.jobs = jobs;
            NoiseSpec base;
            base.preserve_sequential = preserve_seq;
            base.suffix = suffix;
            SweepTable table = sweep(ref, levels, seeds, cfg, base);
            write_output(out_path, to_csv(table, stable));
            return 0;
        }

        if (app.got_subcommand(cmd_inspect)) {
            DesignGraph g = load_design(ref_path, Side::REF, policy);
            const GraphStats& st = g.stats;
            std::size_t anchorable = 0;
            for (const Net& n : g.nets)
                if (!n.canon_ambiguous && !g.net_is_const_driven(n.id))
                    anchorable++;
            std::size_t gates = 0, with_loc = 0;
            for (const CellNode& c : g.nodes)
                if (c.cls == CellClass::COMBINATIONAL || c.cls == CellClass::SEQUENTIAL) {
                    gates++;
                    if (!c.locs.empty())
                        with_loc++;
                }
            std::printf("nets (m)          : %zu\n", st.m);
            std::printf("  sequential      : %zu (%.1f%%)\n", st.m_seq,
                        st.m ? 100.0 * st.m_seq / st.m : 0.0);
            std::printf("  combinational   : %zu\n", st.m_comb);
            std::printf("  port/const      : %zu\n", st.m_port);
            std::printf("nodes             : %zu\n", g.nodes.size());
            std::printf("k_avg             : %.2f\n", st.k_avg);
            std::printf("anchorable names  : %zu\n", anchorable);
            std::printf("loc coverage      : %.1f%% of gate cells\n",
                        gates ? 100.0 * with_loc / gates : 0.0);
            std::printf("ingest warnings   : %zu\n", g.ingest_warnings);

            std::vector<NetId> by_fanout(g.nets.size());
            for (NetId i = 0; i < g.nets.size(); ++i)
                by_fanout[i] = i;
            std::sort(by_fanout.begin(), by_fanout.end(), [&](NetId a, NetId b) {
                if (g.nets[a].sinks.size() != g.nets[b].sinks.size())
                    return g.nets[a].sinks.size() > g.nets[b].sinks.size();
                return a < b;
            });
            std::printf("top fan-out nets  :\n");
            for (std::size_t i = 0; i < by_fanout.size() && i < 5; ++i)
                std::printf("  %-24s %zu sinks\n", g.nets[by_fanout[i]].raw_name.c_str(),
                            g.nets[by_fanout[i]].sinks.size());
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
