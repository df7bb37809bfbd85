// Shared hand-built fixtures. F1 and P2 are used across most suites; the
// other shapes target surrounding matching and cycle handling.

#pragma once

#include <string>

#include "nlalign/graph.hpp"
#include "nlalign/ingest.hpp"

namespace nlalign::test {

// Two inputs through an AND, a flop, and an XOR to one output.
inline DesignGraph make_f1(Side side = Side::REF) {
    static const std::string text = R"(port in in1
port in in2
port in clk
port out out1
cell g1 AND comb loc=top.v:3 in=in1,in2 out=w1 module=TOP
cell r1 DFF seq loc=top.v:4 in=w1,clk out=q1 module=TOP
cell g2 XOR comb loc=top.v:5 in=q1,in2 out=out1 module=TOP
)";
    return read_fixture(text, side);
}

// F1 with the internal AND output renamed, as a synthesis tool would.
inline DesignGraph make_f1_renamed_w1() {
    static const std::string text = R"(port in in1
port in in2
port in clk
port out out1
cell g1 AND comb in=in1,in2 out=$abc$7 module=TOP
cell r1 DFF seq in=$abc$7,clk out=q1 module=TOP
cell g2 XOR comb in=q1,in2 out=out1 module=TOP
)";
    return read_fixture(text, Side::SYNTH);
}

// Two parallel AND -> flop -> XOR slices with distinct per-slice anchors.
inline DesignGraph make_p2(Side side = Side::REF) {
    static const std::string text = R"(port in a1
port in b1
port in a2
port in b2
port in clk
port out o1
port out o2
cell g1 AND comb loc=p2.v:10 in=a1,b1 out=w1 module=P2
cell r1 DFF seq loc=p2.v:11 in=w1,clk out=q1 module=P2
cell x1 XOR comb loc=p2.v:12 in=q1,b1 out=o1 module=P2
cell g2 AND comb loc=p2.v:20 in=a2,b2 out=w2 module=P2
cell r2 DFF seq loc=p2.v:21 in=w2,clk out=q2 module=P2
cell x2 XOR comb loc=p2.v:22 in=q2,b2 out=o2 module=P2
)";
    return read_fixture(text, side);
}

inline DesignGraph make_p2_renamed_internal() {
    static const std::string text = R"(port in a1
port in b1
port in a2
port in b2
port in clk
port out o1
port out o2
cell g1 AND comb in=a1,b1 out=$n$1 module=P2
cell r1 DFF seq in=$n$1,clk out=q1 module=P2
cell x1 XOR comb in=q1,b1 out=o1 module=P2
cell g2 AND comb in=a2,b2 out=$n$2 module=P2
cell r2 DFF seq in=$n$2,clk out=q2 module=P2
cell x2 XOR comb in=q2,b2 out=o2 module=P2
)";
    return read_fixture(text, Side::SYNTH);
}

// Two-flop feedback loop with one external input; exercises cycle handling.
inline DesignGraph make_loop(Side side = Side::REF) {
    static const std::string text = R"(port in ext
port in clk
port out obs
cell g1 AND comb in=qa,ext out=db
cell rb DFF seq in=db,clk out=qb
cell g2 INV comb in=qb out=da
cell ra DFF seq in=da,clk out=qa
cell g3 BUF comb in=qa out=obs
)";
    return read_fixture(text, side);
}

// Three structurally identical AND gates converging on one OR: their output
// nets share SRP/ERP signatures, so one rename yields a three-way tie.
inline DesignGraph make_triple(Side side = Side::REF) {
    static const std::string text = R"(port in a
port in b
port out y
cell g1 AND comb loc=f.v:10 in=a,b out=w1 module=TRI
cell g2 AND comb loc=f.v:10 in=a,b out=w2 module=TRI
cell g3 AND comb loc=f.v:12 in=a,b out=w3 module=TRI
cell m OR3 comb loc=f.v:14 in=w1,w2,w3 out=y module=TRI
)";
    return read_fixture(text, side);
}

inline DesignGraph make_triple_renamed_w1() {
    static const std::string text = R"(port in a
port in b
port out y
cell g1 AND comb in=a,b out=w1_changed module=TRI
cell g2 AND comb in=a,b out=w2 module=TRI
cell g3 AND comb in=a,b out=w3 module=TRI
cell m OR3 comb in=w1_changed,w2,w3 out=y module=TRI
)";
    return read_fixture(text, Side::SYNTH);
}

// Surrounding shape: op's neighbors all carry the same location.
inline DesignGraph make_surround_unanimous(Side side, bool renamed, bool conflict = false) {
    std::string l3 = conflict ? "s.v:9" : "s.v:7";
    std::string w = renamed ? "w_x" : "w";
    std::string text = "port in p1\nport in p2\nport in p3\nport out po\n";
    text += "cell n1 BUF comb loc=s.v:7 in=p1 out=x1 module=S\n";
    text += "cell n2 BUF comb loc=s.v:7 in=p2 out=x2 module=S\n";
    text += "cell n3 BUF comb loc=" + l3 + " in=p3 out=x3 module=S\n";
    text += "cell op AND3 comb in=x1,x2,x3 out=" + w + " module=S\n";
    text += "cell t BUF comb loc=s.v:7 in=" + w + " out=po module=S\n";
    return read_fixture(text, side);
}

// Collapse shape: op's only gate neighbor is b (unknown LoC); b's other
// neighbor carries the location.
inline DesignGraph make_surround_collapse(Side side, bool renamed) {
    std::string w = renamed ? "w_x" : "w";
    std::string v = renamed ? "v_x" : "v";
    std::string text = "port in p\nport out po\n";
    text += "cell op BUF comb in=p out=" + w + " module=S\n";
    text += "cell b BUF comb in=" + w + " out=" + v + " module=S\n";
    text += "cell d BUF comb loc=s.v:42 in=" + v + " out=po module=S\n";
    return read_fixture(text, side);
}

}  // namespace nlalign::test
