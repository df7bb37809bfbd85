#include "nlalign/evalkit.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "nlalign/normalize.hpp"
#include "nlalign/parallel.hpp"

namespace nlalign {

namespace {

// Bounded draw with rejection so results do not depend on the standard
// library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= lim);
    return x % n;
}

std::string suffix_segments(const std::string& raw, const std::string& suffix) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t dot = raw.find('.', pos);
        if (dot == std::string::npos) {
            out += raw.substr(pos) + suffix;
            break;
        }
        out += raw.substr(pos, dot - pos) + suffix + ".";
        pos = dot + 1;
    }
    return out;
}

std::string strip_all(std::string s, const std::string& suffix) {
    if (suffix.empty())
        return s;
    std::size_t pos;
    while ((pos = s.find(suffix)) != std::string::npos)
        s.erase(pos, suffix.size());
    return s;
}

}  // namespace

InjectResult inject_noise(const DesignGraph& g, const NoiseSpec& spec) {
    InjectResult out;
    out.graph = g;
    out.graph.side = Side::SYNTH;
    for (CellNode& c : out.graph.nodes)
        c.locs.clear();
    for (Net& n : out.graph.nets)
        n.is_annotated = false;

    for (const Net& n : g.nets) {
        if (g.net_touches_port(n.id) || g.net_is_const_driven(n.id))
            continue;
        if (spec.preserve_sequential && n.driver != kNoNode &&
            g.nodes[n.driver].cls == CellClass::SEQUENTIAL)
            continue;
        out.eligible.push_back(n.id);
    }

    std::size_t count = out.eligible.size() * static_cast<std::size_t>(spec.noise_pct) / 100;
    std::mt19937_64 rng(spec.seed);
    std::vector<NetId> pool = out.eligible;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + bounded(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    out.renamed = pool;

    for (NetId id : out.renamed) {
        Net& n = out.graph.net(id);
        n.raw_name = suffix_segments(n.raw_name, spec.suffix);
        n.is_annotated = true;
    }
    normalize_graph(out.graph, out.graph.applied_policy, out.graph.module_paths);
    out.graph.stats = compute_stats(out.graph);
    return out;
}

SweepRow score_nl2nl(const AlignmentResult& result, const DesignGraph& g_synth,
                     const DesignGraph& g_ref, const std::string& suffix,
                     const std::vector<NetId>& scored) {
    SweepRow row;
    std::unordered_map<NetId, std::vector<const MatchRecord*>> recs;
    for (const MatchRecord& r : result.records)
        recs[r.synth_net].push_back(&r);

    for (NetId s : scored) {
        row.total++;
        auto it = recs.find(s);
        if (it == recs.end()) {
            row.unresolved++;
            continue;
        }
        switch (it->second.front()->stage) {
        case MatchStage::ANCHOR: row.anchor++; break;
        case MatchStage::FULL: row.full++; break;
        case MatchStage::HALF_SRP:
        case MatchStage::HALF_ERP: row.half++; break;
        case MatchStage::SURROUNDING: row.surrounding++; break;
        case MatchStage::PARTIAL: row.partial++; break;
        }
        std::string want = strip_all(g_synth.net(s).raw_name, suffix);
        bool ok = false;
        for (const MatchRecord* r : it->second) {
            for (NetId ref : r->ref_nets)
                if (g_ref.net(ref).raw_name == want) {
                    ok = true;
                    break;
                }
            if (ok)
                break;
        }
        if (ok)
            row.matched++;
    }
    row.accuracy = row.total == 0 ? 1.0
                                  : static_cast<double>(row.matched) / static_cast<double>(row.total);
    return row;
}

SweepTable sweep(const DesignGraph& g_ref, const std::vector<int>& levels,
                 const std::vector<std::uint64_t>& seeds, const AlignConfig& cfg,
                 const NoiseSpec& base) {
    struct Task {
        int level;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int level : levels)
        for (std::uint64_t seed : seeds)
            tasks.push_back({level, seed});

    SweepTable table;
    table.rows.resize(tasks.size());
    AlignConfig inner = cfg;
    inner.jobs = 1;

    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        NoiseSpec spec = base;
        spec.noise_pct = tasks[i].level;
        spec.seed = tasks[i].seed;
        InjectResult ir = inject_noise(g_ref, spec);
        // At zero noise nothing is renamed; score every eligible net so the
        // completeness claim is not vacuous.
        const std::vector<NetId>& scored = ir.renamed.empty() ? ir.eligible : ir.renamed;
        AlignmentResult res = run_alignment(g_ref, ir.graph, scored, inner);
        SweepRow row = score_nl2nl(res, ir.graph, g_ref, spec.suffix, scored);
        row.noise_pct = tasks[i].level;
        row.seed = tasks[i].seed;
        row.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        table.rows[i] = std::move(row);
    });
    return table;
}

std::string to_csv(const SweepTable& table, bool stable_output) {
    std::ostringstream os;
    os << "# prng=mt19937_64 sampler=fisher-yates\n";
    os << "noise_pct,seed,total,matched,accuracy,anchor,full,half,surrounding,partial,"
          "unresolved,wall_ms\n";
    for (const SweepRow& r : table.rows) {
        os << r.noise_pct << "," << r.seed << "," << r.total << "," << r.matched << ","
           << r.accuracy << "," << r.anchor << "," << r.full << "," << r.half << ","
           << r.surrounding << "," << r.partial << "," << r.unresolved << ","
           << (stable_output ? 0.0 : r.wall_ms) << "\n";
    }
    return os.str();
}

std::vector<StageShare> stage_stats(const AlignmentResult& r) {
    auto matched = [&](MatchStage s) -> std::size_t {
        auto it = r.stage_counts.find(s);
        return it == r.stage_counts.end() ? 0 : it->second.matched;
    };
    std::size_t full_half = matched(MatchStage::FULL) + matched(MatchStage::HALF_SRP) +
                            matched(MatchStage::HALF_ERP);
    std::vector<StageShare> out = {
        {"anchor", matched(MatchStage::ANCHOR), 0, r.timing.anchor_ms, 0},
        {"traversal", 0, 0, r.timing.traversal_ms, 0},
        {"full+half", full_half, 0, r.timing.full_half_ms, 0},
        {"surrounding", matched(MatchStage::SURROUNDING), 0, r.timing.surrounding_ms, 0},
        {"partial", matched(MatchStage::PARTIAL), 0, r.timing.partial_ms, 0},
    };
    std::size_t total_matched = 0;
    double total_ms = 0;
    for (const StageShare& s : out) {
        total_matched += s.matched;
        total_ms += s.ms;
    }
    for (StageShare& s : out) {
        s.match_share = total_matched == 0
                            ? 0.0
                            : static_cast<double>(s.matched) / static_cast<double>(total_matched);
        s.time_share = total_ms == 0.0 ? 0.0 : s.ms / total_ms;
    }
    return out;
}

}  // namespace nlalign
