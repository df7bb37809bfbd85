// -*- c++ -*-
// Readers for Yosys-style JSON netlists (with flattening and src-attribute
// parsing), annotation files, and the plain-text GNL fixture format.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlalign/graph.hpp"

namespace nlalign {

struct AnnotationEntry {
    std::string module;
    std::string net;
};

struct AnnotationSet {
    std::vector<AnnotationEntry> entries;
    std::vector<NetId> resolved;  // sorted unique
    std::vector<AnnotationEntry> unbound;
};

struct IngestOptions {
    SepPolicy policy = SepPolicy::DOT;
    SeqTypes seq_types = SeqTypes::defaults();
};

// `file:line.col` segments separated by `|`; ranges keep their first
// coordinate pair. Unparseable segments are skipped and tallied.
std::vector<SourceLoc> parse_src_attribute(std::string_view s, std::size_t* skipped = nullptr);

DesignGraph read_netlist_json(const std::string& text, Side side,
                              const IngestOptions& opt = {});
DesignGraph read_netlist_json_file(const std::string& path, Side side,
                                   const IngestOptions& opt = {});

// Binds {module, net} entries via canonical-name lookup and flags the bound
// nets as annotated.
AnnotationSet read_annotations(const std::string& json_text, DesignGraph& g);
AnnotationSet read_annotations_file(const std::string& path, DesignGraph& g);

DesignGraph read_fixture(const std::string& text, Side side, const IngestOptions& opt = {});
DesignGraph read_fixture_file(const std::string& path, Side side, const IngestOptions& opt = {});
std::string write_fixture(const DesignGraph& g);

std::string read_file(const std::string& path);

}  // namespace nlalign
