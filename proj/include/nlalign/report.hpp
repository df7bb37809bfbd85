// -*- c++ -*-
// Report emission: the three-column text table, TSV, and JSON forms.

#pragma once

#include <string>
#include <vector>

#include "nlalign/align.hpp"

namespace nlalign {

struct ReportRow {
    std::string annotated;
    std::string ref_name;  // "<unnamed edge>" for location-only records
    std::string module;
    std::vector<std::string> locs;  // "[line]" or "[file:line.col]" forms
    std::string stage;
    std::string confidence;
};

std::vector<ReportRow> build_rows(const AlignmentResult& result, const DesignGraph& g_ref,
                                  const DesignGraph& g_synth);

std::string render_text(const AlignmentResult& result, const DesignGraph& g_ref,
                        const DesignGraph& g_synth);
std::string render_tsv(const AlignmentResult& result, const DesignGraph& g_ref,
                       const DesignGraph& g_synth);
std::string render_json(const AlignmentResult& result, const DesignGraph& g_ref,
                        const DesignGraph& g_synth);

}  // namespace nlalign
