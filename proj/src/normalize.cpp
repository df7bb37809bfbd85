#include "nlalign/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace nlalign {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Trailing `_<digits>_` becomes `[<digits>]` (bus-bit nomenclature). The stem
// must be non-empty so tool-generated names like `_123_` are left alone.
std::string rewrite_bus_suffix(std::string s) {
    if (s.size() < 3 || s.back() != '_')
        return s;
    std::size_t open = s.rfind('_', s.size() - 2);
    if (open == std::string::npos || open == 0)
        return s;
    std::string_view digits(s.data() + open + 1, s.size() - open - 2);
    if (!all_digits(digits))
        return s;
    std::string out = s.substr(0, open);
    out += '[';
    out += digits;
    out += ']';
    return out;
}

std::string collapse_separators(std::string s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '.' && (out.empty() || out.back() == '.'))
            continue;
        out += c;
    }
    while (!out.empty() && out.back() == '.')
        out.pop_back();
    return out;
}

// All positions in `s` that can act as a hierarchy split point.
std::vector<std::size_t> separator_positions(const std::string& s) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 1; i + 1 < s.size() + 1 && i < s.size(); ++i)
        if (s[i] == '.' || s[i] == '_')
            pos.push_back(i);
    return pos;
}

std::string infer_separators(const std::string& s, const std::vector<std::string>& vocab) {
    if (vocab.empty())
        return s;
    std::vector<std::string> results;
    for (std::size_t i : separator_positions(s)) {
        std::string hier = s.substr(0, i);
        std::replace(hier.begin(), hier.end(), '_', '.');
        if (!std::binary_search(vocab.begin(), vocab.end(), hier))
            continue;
        std::string cand = hier + "." + s.substr(i + 1);
        if (std::find(results.begin(), results.end(), cand) == results.end())
            results.push_back(cand);
    }
    // Multiple distinct module-prefix parses: ambiguous, keep the raw spelling
    // rather than risk a false anchor.
    if (results.size() == 1)
        return results.front();
    return s;
}

}  // namespace

std::string canonicalize_name(std::string_view raw, SepPolicy policy,
                              const std::vector<std::string>& module_vocab) {
    std::string s(raw);
    // Leading/trailing separators are never meaningful and would mask the
    // suffix rewrites below.
    std::size_t b = s.find_first_not_of('.');
    if (b != std::string::npos)
        s = s.substr(b, s.find_last_not_of('.') - b + 1);
    bool inverted = false;
    if (s.size() > 4 && s.ends_with("_BAR")) {
        s.resize(s.size() - 4);
        inverted = true;
    }
    s = rewrite_bus_suffix(std::move(s));
    switch (policy) {
    case SepPolicy::DOT:
        break;
    case SepPolicy::UNDERSCORE:
        std::replace(s.begin(), s.end(), '_', '.');
        break;
    case SepPolicy::INFER:
        s = infer_separators(s, module_vocab);
        break;
    }
    s = collapse_separators(std::move(s));
    if (inverted)
        s += '~';
    return s;
}

void normalize_graph(DesignGraph& g, SepPolicy policy,
                     const std::vector<std::string>& module_vocab) {
    std::vector<std::string> vocab = module_vocab;
    std::sort(vocab.begin(), vocab.end());

    std::map<std::string, std::vector<NetId>> groups;
    for (Net& n : g.nets) {
        n.canon_name = canonicalize_name(n.raw_name, policy, vocab);
        n.canon_ambiguous = false;
        groups[n.canon_name].push_back(n.id);
    }

    g.name_index.clear();
    g.name_index.reserve(g.nets.size());
    for (auto& [canon, ids] : groups) {
        if (ids.size() == 1 && !g.name_index.count(canon)) {
            g.name_index.emplace(canon, ids.front());
            continue;
        }
        // Canonicalization merged distinct raw names: disambiguate with #<n>
        // and bar every collider from anchoring.
        std::sort(ids.begin(), ids.end());
        int suffix = 2;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            Net& n = g.nets[ids[i]];
            n.canon_ambiguous = true;
            if (i > 0) {
                std::string cand;
                do {
                    cand = canon + "#" + std::to_string(suffix++);
                } while (g.name_index.count(cand) || groups.count(cand));
                n.canon_name = cand;
            }
            g.name_index.emplace(n.canon_name, n.id);
        }
    }
    g.applied_policy = policy;
    g.module_paths = std::move(vocab);
}

AnchorMap find_anchor_points(const DesignGraph& g_ref, const DesignGraph& g_synth) {
    AnchorMap am;
    // The reference side was already captured as a hashmap at construction;
    // account for that sweep in the visit budget anyway.
    am.visits = g_ref.nets.size();
    for (const Net& sn : g_synth.nets) {
        am.visits++;
        if (sn.canon_ambiguous || g_synth.net_is_const_driven(sn.id))
            continue;
        NetId rid = g_ref.find_net(sn.canon_name);
        if (rid == kNoNet)
            continue;
        am.visits++;
        const Net& rn = g_ref.net(rid);
        if (rn.canon_ambiguous || g_ref.net_is_const_driven(rid))
            continue;
        CellClass rc = g_ref.node(rn.driver).cls;
        CellClass sc = g_synth.node(sn.driver).cls;
        if (rc != sc) {
            am.class_conflicts++;
            continue;
        }
        am.pairs.emplace_back(rid, sn.id);
    }
    std::sort(am.pairs.begin(), am.pairs.end());
    for (auto [r, s] : am.pairs) {
        am.ref_to_synth.emplace(r, s);
        am.synth_to_ref.emplace(s, r);
    }
    am.anchor_fraction =
        g_synth.stats.m == 0 ? 0.0 : static_cast<double>(am.count()) / static_cast<double>(g_synth.stats.m);
    return am;
}

}  // namespace nlalign
