#include <doctest.h>
#include <json.hpp>

#include <algorithm>

#include "nlalign/ingest.hpp"
#include "nlalign/normalize.hpp"
#include "fixtures.hpp"

using namespace nlalign;
using namespace nlalign::test;

namespace {
std::string td(const std::string& name) { return std::string(TESTDATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("parse_src_attribute") {
    std::size_t skipped = 0;
    auto v = parse_src_attribute("top.v:3.2", &skipped);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == SourceLoc{"top.v", 3, 2});
    CHECK(skipped == 0);

    CHECK(parse_src_attribute("").empty());

    v = parse_src_attribute("a.v:10.1-12.9|b.v:7.0");
    REQUIRE(v.size() == 2);
    CHECK(v[0] == SourceLoc{"a.v", 10, 1});
    CHECK(v[1] == SourceLoc{"b.v", 7, 0});

    // unparseable segments are skipped, not fatal
    skipped = 0;
    v = parse_src_attribute("nonsense|c.v:4", &skipped);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == SourceLoc{"c.v", 4, 0});
    CHECK(skipped == 1);

    // line must stay >= 1
    skipped = 0;
    CHECK(parse_src_attribute("d.v:0.3", &skipped).empty());
    CHECK(skipped == 1);
}

TEST_CASE("parse_src_attribute output satisfies SourceLoc invariants") {
    const char* samples[] = {"x.v:1", "x.v:1.0-2.5|y.v:9.9", "weird", ":3", "f:2.1|", "f.v:-1"};
    for (const char* s : samples)
        for (const SourceLoc& l : parse_src_attribute(s)) {
            CHECK(l.line >= 1);
            CHECK(l.col >= 0);
            CHECK(!l.file.empty());
        }
}

TEST_CASE("F1 JSON round-trips into the F1 graph") {
    DesignGraph g = read_netlist_json_file(td("f1_ref.json"), Side::REF);
    CHECK(g.nets.size() == 6);
    CHECK(g.nodes.size() == 7);
    NetId w1 = g.find_net("w1");
    REQUIRE(w1 != kNoNet);
    const CellNode& g1 = g.node(g.net(w1).driver);
    CHECK(g1.cell_type == "$and");
    REQUIRE(!g1.locs.empty());
    CHECK(g1.locs[0].file == "top.v");
    CHECK(g1.locs[0].line == 3);
    // r1 classified sequential from $dff
    NetId q1 = g.find_net("q1");
    CHECK(g.node(g.net(q1).driver).cls == CellClass::SEQUENTIAL);
    // ports became nodes
    std::size_t ports = 0;
    for (const CellNode& c : g.nodes)
        if (c.cls == CellClass::PORT_IN || c.cls == CellClass::PORT_OUT)
            ports++;
    CHECK(ports == 4);
}

TEST_CASE("netname src attaches to the driver when the cell has none") {
    std::string text = read_file(td("f1_ref.json"));
    // strip g1's own src attribute; w1's netname src should then land on g1
    std::size_t pos = text.find("\"src\": \"top.v:3.12-3.22\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"src\": \"top.v:3.12-3.22\"").size(), "");
    DesignGraph g = read_netlist_json(text, Side::REF);
    const CellNode& g1 = g.node(g.net(g.find_net("w1")).driver);
    REQUIRE(g1.locs.size() == 1);
    CHECK(g1.locs[0] == SourceLoc{"top.v", 3, 2});
}

TEST_CASE("two cells driving one bit is MULTI_DRIVER") {
    std::string text = read_file(td("f1_ref.json"));
    // make g2 drive bit 5 as well (w1 already driven by g1)
    std::size_t pos = text.find("\"A\": [6], \"B\": [3], \"Y\": [7]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"A\": [6], \"B\": [3], \"Y\": [7]").size(),
                 "\"A\": [6], \"B\": [3], \"Y\": [5]");
    try {
        read_netlist_json(text, Side::SYNTH);
        FAIL("expected MULTI_DRIVER");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::MULTI_DRIVER);
    }
}

TEST_CASE("connection to an undeclared bit is UNKNOWN_BIT") {
    std::string text = read_file(td("f1_ref.json"));
    std::size_t pos = text.find("\"A\": [2], \"B\": [3], \"Y\": [5]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"A\": [2], \"B\": [3], \"Y\": [5]").size(),
                 "\"A\": [2], \"B\": [99], \"Y\": [5]");
    try {
        read_netlist_json(text, Side::REF);
        FAIL("expected UNKNOWN_BIT");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::UNKNOWN_BIT);
    }
}

TEST_CASE("malformed JSON reports MALFORMED_JSON") {
    try {
        read_netlist_json("{not json", Side::REF);
        FAIL("expected MALFORMED_JSON");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::MALFORMED_JSON);
    }
}

TEST_CASE("ingestion is independent of JSON key order") {
    // same design, object keys spelled in a different order
    std::string a = read_file(td("f1_ref.json"));
    nlohmann::json ja = nlohmann::json::parse(a);
    std::string shuffled = ja.dump();  // nlohmann sorts keys; dump then re-read
    DesignGraph g1 = read_netlist_json(a, Side::REF);
    DesignGraph g2 = read_netlist_json(shuffled, Side::REF);
    REQUIRE(g1.nets.size() == g2.nets.size());
    for (NetId i = 0; i < g1.nets.size(); ++i) {
        CHECK(g1.nets[i].raw_name == g2.nets[i].raw_name);
        CHECK(g1.nets[i].driver == g2.nets[i].driver);
        CHECK(g1.nets[i].sinks == g2.nets[i].sinks);
    }
}

TEST_CASE("multi-bit buses are bit-blasted with [i] names") {
    std::string text = R"({
      "modules": { "top": { "attributes": { "top": 1 },
        "ports": { "bus": { "direction": "input", "bits": [2, 3] },
                   "y":   { "direction": "output", "bits": [4] } },
        "cells": { "g": { "type": "$and",
          "port_directions": { "A": "input", "B": "input", "Y": "output" },
          "connections": { "A": [2], "B": [3], "Y": [4] } } },
        "netnames": { "bus": { "bits": [2, 3] }, "y": { "bits": [4] } } } } })";
    DesignGraph g = read_netlist_json(text, Side::REF);
    CHECK(g.find_net("bus[0]") != kNoNet);
    CHECK(g.find_net("bus[1]") != kNoNet);
    CHECK(g.find_net("y") != kNoNet);
}

TEST_CASE("hierarchy flattening preserves connectivity") {
    DesignGraph flat = read_netlist_json_file(td("hier_ref.json"), Side::REF);
    DesignGraph hand = read_fixture_file(td("hier_flat.gnl"), Side::REF);
    REQUIRE(flat.nets.size() == hand.nets.size());
    // same canonical names, same driver cell types, same adjacency
    for (const Net& n : hand.nets) {
        NetId f = flat.find_net(n.canon_name);
        REQUIRE(f != kNoNet);
        CHECK(flat.node(flat.net(f).driver).cls == hand.node(n.driver).cls);
        CHECK(flat.net(f).sinks.size() == n.sinks.size());
    }
    // instance path vocabulary captured for separator inference
    CHECK(std::find(flat.module_paths.begin(), flat.module_paths.end(), "u0") !=
          flat.module_paths.end());
    // locs survive flattening on the inlined cells
    NetId t = flat.find_net("u0.t");
    REQUIRE(t != kNoNet);
    CHECK(flat.node(flat.net(t).driver).locs[0] == SourceLoc{"child.v", 2, 1});
    CHECK(flat.node(flat.net(t).driver).annotated_module == "child");
}

TEST_CASE("constants become constant nodes and nets") {
    std::string text = R"({
      "modules": { "top": { "attributes": { "top": 1 },
        "ports": { "y": { "direction": "output", "bits": [2] } },
        "cells": { "g": { "type": "$and",
          "port_directions": { "A": "input", "B": "input", "Y": "output" },
          "connections": { "A": ["0"], "B": ["1"], "Y": [2] } } },
        "netnames": { "y": { "bits": [2] } } } } })";
    DesignGraph g = read_netlist_json(text, Side::REF);
    NetId c0 = g.find_net("$const$0");
    REQUIRE(c0 != kNoNet);
    CHECK(g.net_is_const_driven(c0));
}

TEST_CASE("annotations bind through canonicalization") {
    DesignGraph g = make_f1(Side::SYNTH);
    AnnotationSet as = read_annotations(R"([{ "module": "", "net": "w1" }])", g);
    REQUIRE(as.resolved.size() == 1);
    CHECK(g.net(as.resolved[0]).raw_name == "w1");
    CHECK(g.net(as.resolved[0]).is_annotated);
    CHECK(as.unbound.empty());
}

TEST_CASE("annotation binding handles flattened bus-bit names") {
    std::vector<NetDesc> nets = {{"dcache.tlb_pmp_io_addr[31]", 31, false, false}};
    std::vector<NodeDesc> nodes(1);
    nodes[0].name = "p";
    nodes[0].cell_type = "$port";
    nodes[0].cls = CellClass::PORT_IN;
    nodes[0].out_nets = {"dcache.tlb_pmp_io_addr[31]"};
    DesignGraph g = build_graph(nodes, nets, Side::SYNTH);
    AnnotationSet as =
        read_annotations(R"([{ "module": "dcache", "net": "tlb_pmp_io_addr_31" }])", g);
    REQUIRE(as.resolved.size() == 1);
    CHECK(g.net(as.resolved[0]).raw_name == "dcache.tlb_pmp_io_addr[31]");
}

TEST_CASE("unknown annotation entries are reported unbound") {
    DesignGraph g = make_f1(Side::SYNTH);
    AnnotationSet as = read_annotations(R"([{ "module": "", "net": "nope" }])", g);
    CHECK(as.resolved.empty());
    REQUIRE(as.unbound.size() == 1);
    CHECK(as.unbound[0].net == "nope");
}

TEST_CASE("GNL fixture round-trip is lossless") {
    DesignGraph g = make_f1();
    g.net(g.find_net("w1")).is_annotated = true;
    std::string text = write_fixture(g);
    DesignGraph h = read_fixture(text, Side::REF);
    REQUIRE(h.nets.size() == g.nets.size());
    for (const Net& n : g.nets) {
        NetId hid = h.find_net(n.canon_name);
        REQUIRE(hid != kNoNet);
        const Net& hn = h.net(hid);
        CHECK(hn.is_annotated == n.is_annotated);
        CHECK(h.node(hn.driver).cell_type == g.node(n.driver).cell_type);
        CHECK(h.node(hn.driver).cls == g.node(n.driver).cls);
        CHECK(h.node(hn.driver).locs == g.node(n.driver).locs);
        CHECK(h.node(hn.driver).annotated_module == g.node(n.driver).annotated_module);
        CHECK(hn.sinks.size() == n.sinks.size());
    }
}

TEST_CASE("GNL parse errors carry the line number") {
    try {
        read_fixture("port in a\ncell g AND bogus in=a out=w\n", Side::REF);
        FAIL("expected PARSE_ERROR");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::PARSE_ERROR);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("GNL cell line with two inputs") {
    DesignGraph g = read_fixture("port in a\nport in b\nport out w\n"
                                 "cell 3 AND comb in=a,b out=w\n",
                                 Side::REF);
    NetId w = g.find_net("w");
    REQUIRE(w != kNoNet);
    const CellNode& c = g.node(g.net(w).driver);
    CHECK(c.cell_type == "AND");
    CHECK(c.in_nets.size() == 2);
}
