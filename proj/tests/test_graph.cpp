#include <doctest.h>

#include <random>

#include "nlalign/graph.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace nlalign;
using namespace nlalign::test;

TEST_CASE("F1 builds with expected shape") {
    DesignGraph g = make_f1();
    // 4 ports + 3 gates; ports are modeled as nodes.
    CHECK(g.nodes.size() == 7);
    CHECK(g.nets.size() == 6);
    CHECK(g.stats.m == 6);
    NetId w1 = g.find_net("w1");
    REQUIRE(w1 != kNoNet);
    CHECK(g.node(g.net(w1).driver).cell_type == "AND");
    CHECK(g.node(g.net(w1).driver).locs.size() == 1);
    CHECK(g.node(g.net(w1).driver).locs[0] == SourceLoc{"top.v", 3, 0});
}

TEST_CASE("empty descriptor lists build an empty graph") {
    DesignGraph g = build_graph({}, {}, Side::REF);
    CHECK(g.nodes.empty());
    CHECK(g.nets.empty());
    CHECK(g.stats.m == 0);
}

TEST_CASE("two drivers on one net abort construction") {
    std::vector<NetDesc> nets = {{"a", 0, false, false}, {"w", 0, false, false}};
    std::vector<NodeDesc> nodes(2);
    nodes[0].name = "p";
    nodes[0].cell_type = "$port";
    nodes[0].cls = CellClass::PORT_IN;
    nodes[0].out_nets = {"a"};
    nodes[1].name = "g";
    nodes[1].cell_type = "$and";
    nodes[1].cls = CellClass::COMBINATIONAL;
    nodes[1].in_nets = {"a"};
    nodes[1].out_nets = {"w", "w"};  // same output pin claims the net twice
    try {
        build_graph(nodes, nets, Side::REF);
        FAIL("expected MULTI_DRIVER");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::MULTI_DRIVER);
    }
}

TEST_CASE("dangling and duplicate descriptors are rejected") {
    std::vector<NodeDesc> nodes(1);
    nodes[0].name = "g";
    nodes[0].cls = CellClass::COMBINATIONAL;
    nodes[0].in_nets = {"missing"};
    nodes[0].out_nets = {"w"};
    try {
        build_graph(nodes, {{"w", 0, false, false}}, Side::REF);
        FAIL("expected DANGLING_REF");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::DANGLING_REF);
    }
    try {
        build_graph({}, {{"x", 0, false, false}, {"x", 0, false, false}}, Side::REF);
        FAIL("expected DUPLICATE_NAME");
    } catch (const Error& e) {
        CHECK(e.code == ErrCode::DUPLICATE_NAME);
    }
}

TEST_CASE("build_graph is deterministic") {
    DesignGraph a = make_f1();
    DesignGraph b = make_f1();
    REQUIRE(a.nets.size() == b.nets.size());
    for (NetId i = 0; i < a.nets.size(); ++i) {
        CHECK(a.nets[i].raw_name == b.nets[i].raw_name);
        CHECK(a.nets[i].canon_name == b.nets[i].canon_name);
        CHECK(a.nets[i].driver == b.nets[i].driver);
    }
    CHECK(a.name_index == b.name_index);
}

TEST_CASE("neighbors over F1") {
    DesignGraph g = make_f1();
    auto id_of = [&](const std::string& name) {
        for (const CellNode& c : g.nodes)
            if (c.name == name)
                return c.id;
        return kNoNode;
    };
    std::vector<NodeId> r1 = neighbors(g, id_of("r1"));
    CHECK(r1 == std::vector<NodeId>{id_of("clk"), id_of("g1"), id_of("g2")});
    CHECK(neighbors(g, id_of("in1")) == std::vector<NodeId>{id_of("g1")});
}

TEST_CASE("isolated constant has no neighbors") {
    std::vector<NodeDesc> nodes(1);
    nodes[0].name = "c0";
    nodes[0].cell_type = "$const";
    nodes[0].cls = CellClass::CONSTANT;
    nodes[0].out_nets = {"k"};
    DesignGraph g = build_graph(nodes, {{"k", 0, false, false}}, Side::REF);
    CHECK(neighbors(g, 0).empty());
}

TEST_CASE("neighbors is symmetric on random graphs") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        DagOptions opt;
        opt.gates = 60;
        opt.seq_prob = 0.2;
        DesignGraph g = gen_random_dag(seed, opt);
        for (NodeId a = 0; a < g.nodes.size(); ++a)
            for (NodeId b : neighbors(g, a)) {
                auto back = neighbors(g, b);
                CHECK(std::find(back.begin(), back.end(), a) != back.end());
            }
    }
}

TEST_CASE("classify_cell on defaults") {
    const SeqTypes& def = SeqTypes::defaults();
    CHECK(classify_cell("sky130_fd_sc_hd__dfxtp_1", def) == CellClass::SEQUENTIAL);
    CHECK(classify_cell("$and", def) == CellClass::COMBINATIONAL);
    CHECK(classify_cell("$mem_v2", def) == CellClass::SEQUENTIAL);
    CHECK(classify_cell("$dff", def) == CellClass::SEQUENTIAL);
    CHECK(classify_cell("$_DFF_P_", def) == CellClass::SEQUENTIAL);
    CHECK(classify_cell("sky130_fd_sc_hd__nand2_1", def) == CellClass::COMBINATIONAL);
}

TEST_CASE("stats buckets: F1 has two sequential nets") {
    DesignGraph g = make_f1();
    CHECK(g.stats.m_seq == 2);   // w1 and q1; clk is port-driven
    CHECK(g.stats.m_comb == 1);  // out1
    CHECK(g.stats.m_port == 3);  // in1, in2, clk
    CHECK(g.stats.m == g.stats.m_seq + g.stats.m_comb + g.stats.m_port);
}

TEST_CASE("recomputed stats match construction-time stats") {
    for (std::uint64_t seed : {11u, 12u}) {
        DagOptions opt;
        opt.gates = 80;
        opt.seq_prob = 0.15;
        DesignGraph g = gen_random_dag(seed, opt);
        GraphStats re = compute_stats(g);
        CHECK(re.m == g.stats.m);
        CHECK(re.m_seq == g.stats.m_seq);
        CHECK(re.m_comb == g.stats.m_comb);
        CHECK(re.m_port == g.stats.m_port);
        CHECK(re.k_avg == doctest::Approx(g.stats.k_avg));
    }
}

TEST_CASE("single-driver property holds after construction") {
    DagOptions opt;
    opt.gates = 120;
    opt.allow_cycles = true;
    DesignGraph g = gen_random_dag(5, opt);
    std::vector<int> drives(g.nets.size(), 0);
    for (const CellNode& c : g.nodes)
        for (NetId o : c.out_nets)
            drives[o]++;
    for (NetId i = 0; i < g.nets.size(); ++i) {
        CHECK(drives[i] == 1);
        CHECK(g.net(i).driver != kNoNode);
    }
}
