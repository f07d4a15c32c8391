#include "doctest.h"

#include "pdesk/db.hpp"
#include "pdesk/io/io.hpp"
#include "pdesk/util.hpp"

#include "../support/fixtures.hpp"
#include "../support/random_design.hpp"

using namespace pdesk;
using testsupport::testdata;
using testsupport::toy_tech;

TEST_CASE("lef: unit scaling of macro size") {
  const std::string lef = R"(
UNITS
  DATABASE MICRONS 1000 ;
END UNITS
SITE core
  CLASS CORE ;
  SIZE 0.24 BY 2.4 ;
END core
MACRO X
  CLASS CORE ;
  SIZE 0.48 BY 2.4 ;
END X
END LIBRARY
)";
  Log log;
  TechLibrary tech = io::parse_tech_lef(lef, log);
  const CellMaster* m = tech.find_master("X");
  REQUIRE(m != nullptr);
  CHECK(m->width == 480);
  CHECK(m->height == 2400);
}

TEST_CASE("lef: layer pitch/width/spacing scaling") {
  const std::string lef = R"(
UNITS
  DATABASE MICRONS 1000 ;
END UNITS
LAYER m1
  TYPE ROUTING ;
  DIRECTION HORIZONTAL ;
  PITCH 0.2 ;
  WIDTH 0.1 ;
  SPACING 0.1 ;
END m1
END LIBRARY
)";
  Log log;
  TechLibrary tech = io::parse_tech_lef(lef, log);
  REQUIRE(tech.layers.size() == 1);
  CHECK(tech.layers[0].pitch == 200);
  CHECK(tech.layers[0].width == 100);
  CHECK(tech.layers[0].spacing == 100);
}

TEST_CASE("lef: bundled tech has 5 routing layers alternating H/V") {
  const TechLibrary& tech = toy_tech();
  REQUIRE(tech.layers.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(tech.layers[i].index == i + 1);
    const LayerDir expected = i % 2 == 0 ? LayerDir::Horizontal : LayerDir::Vertical;
    CHECK(tech.layers[i].dir == expected);
  }
  CHECK(tech.layers[0].name == "metal1");
}

TEST_CASE("lef: syntax error carries a line number") {
  const std::string lef = "UNITS\n  DATABASE MICRONS notanumber ;\nEND UNITS\n";
  Log log;
  CHECK_THROWS_WITH_AS(io::parse_tech_lef(lef, log), doctest::Contains("lef:2"), Error);
}

TEST_CASE("lef: unknown keyword skipped with warning") {
  const std::string lef = R"(
UNITS
  DATABASE MICRONS 1000 ;
END UNITS
FANCYEXTENSION foo bar ;
END LIBRARY
)";
  Log log;
  io::parse_tech_lef(lef, log);
  REQUIRE(log.warnings().size() == 1);
  CHECK(log.warnings()[0].find("FANCYEXTENSION") != std::string::npos);
}

TEST_CASE("liberty: 2x2 table values land in the NLDM grid") {
  const std::string lib = R"(
library (mini) {
  time_unit : "1ns";
  capacitive_load_unit (1, pf);
  cell (G) {
    pin (A) { direction : input; capacitance : 0.0021; }
    pin (Y) {
      direction : output;
      function : "!A";
      timing () {
        related_pin : "A";
        timing_type : combinational;
        cell_rise (x) { index_1("0.1, 0.2"); index_2("0.001, 0.002"); values("1, 2", "3, 4"); }
        cell_fall (x) { index_1("0.1, 0.2"); index_2("0.001, 0.002"); values("1, 2", "3, 4"); }
        rise_transition (x) { index_1("0.1, 0.2"); index_2("0.001, 0.002"); values("1, 2", "3, 4"); }
        fall_transition (x) { index_1("0.1, 0.2"); index_2("0.001, 0.002"); values("1, 2", "3, 4"); }
      }
    }
  }
}
)";
  Log log;
  TechLibrary tech;
  io::parse_liberty(lib, tech, log);
  const CellMaster* g = tech.find_master("G");
  REQUIRE(g != nullptr);
  REQUIRE(g->arcs.size() == 1);
  const NldmTable& t = g->arcs[0].cell_rise;
  CHECK(t.at(0, 0) == doctest::Approx(1.0));
  CHECK(t.at(0, 1) == doctest::Approx(2.0));
  CHECK(t.at(1, 0) == doctest::Approx(3.0));
  CHECK(t.at(1, 1) == doctest::Approx(4.0));
  // load axis converted pF -> fF
  CHECK(t.load_axis[0] == doctest::Approx(1.0));
  CHECK(t.load_axis[1] == doctest::Approx(2.0));
  // pin capacitance 0.0021 pF -> 2.1 fF
  CHECK(g->find_pin("A")->cap_ff == doctest::Approx(2.1));
}

TEST_CASE("liberty: missing table is an error") {
  const std::string lib = R"(
library (mini) {
  cell (G) {
    pin (Y) {
      direction : output;
      function : "A";
      timing () {
        related_pin : "A";
        cell_rise (x) { index_1("0.1"); index_2("0.001"); values("1"); }
      }
    }
    pin (A) { direction : input; capacitance : 0.001; }
  }
}
)";
  Log log;
  TechLibrary tech;
  CHECK_THROWS_AS(io::parse_liberty(lib, tech, log), Error);
  try {
    TechLibrary tech2;
    Log log2;
    io::parse_liberty(lib, tech2, log2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingTable);
  }
}

TEST_CASE("liberty: bundled library marks BUFX1 as buffer") {
  const TechLibrary& tech = toy_tech();
  const CellMaster* buf = tech.find_master("BUFX1");
  REQUIRE(buf != nullptr);
  CHECK(buf->is_buffer);
  CHECK(!buf->is_inverter);
  const CellMaster* inv = tech.find_master("INVX1");
  REQUIRE(inv != nullptr);
  CHECK(inv->is_inverter);
  const CellMaster* dff = tech.find_master("DFFX1");
  REQUIRE(dff != nullptr);
  CHECK(dff->is_sequential);
  CHECK(dff->clock_pin() >= 0);
}

TEST_CASE("verilog: named connections build the AST") {
  const std::string v = R"(
module top (in, out);
  input in;
  output out;
  INVX1 u1 (.A(in), .Y(out));
endmodule
)";
  Log log;
  NetlistAST ast = io::parse_netlist(v, log);
  CHECK(ast.module_name == "top");
  REQUIRE(ast.instances.size() == 1);
  CHECK(ast.instances[0].master == "INVX1");
  CHECK(ast.instances[0].connections.size() == 2);
}

TEST_CASE("verilog: positional connections rejected") {
  const std::string v = R"(
module top (in, out);
  input in;
  output out;
  INVX1 u1 (in, out);
endmodule
)";
  Log log;
  try {
    io::parse_netlist(v, log);
    FAIL("expected PositionalConnectionUnsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PositionalConnectionUnsupported);
  }
}

TEST_CASE("verilog: undeclared wire rejected") {
  const std::string v = R"(
module top (in, out);
  input in;
  output out;
  INVX1 u1 (.A(in), .Y(mystery));
endmodule
)";
  Log log;
  try {
    io::parse_netlist(v, log);
    FAIL("expected UndeclaredWire");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeclaredWire);
  }
}

TEST_CASE("verilog: bundled benchmarks parse with zero warnings") {
  for (const char* name : {"c50", "c300", "c1k", "shiftreg", "fanout16"}) {
    Log log;
    NetlistAST ast = io::parse_netlist(io::read_file(testdata(std::string("designs/") + name + ".v")), log);
    CHECK_MESSAGE(log.warnings().empty(), name);
    CHECK(!ast.instances.empty());
  }
}

TEST_CASE("verilog: instance count matches text-level instantiation count") {
  // oracle: count lines of the form "  MASTER name (.pin(net)...);"
  const std::string text = io::read_file(testdata("designs/c1k.v"));
  std::size_t expected = 0;
  for (const auto& line : split(text, '\n')) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (starts_with(t, "module") || starts_with(t, "endmodule") || starts_with(t, "input") ||
        starts_with(t, "output") || starts_with(t, "wire"))
      continue;
    if (t.find("(.") != std::string::npos) ++expected;
  }
  Log log;
  NetlistAST ast = io::parse_netlist(text, log);
  CHECK(ast.instances.size() == expected);
  Design d = build_design(toy_tech(), ast, log);
  CHECK(d.instances.size() == expected);
}

TEST_CASE("sdc: clock, delays, loads, limits") {
  Log log;
  SdcConstraints sdc = io::parse_sdc(
      "create_clock -period 5 [get_ports clk]\n"
      "set_input_delay 1.0 -clock clk [get_ports in]\n"
      "set_output_delay 0.5 -clock clk [get_ports {out1 out2}]\n"
      "set_load 0.004 [get_ports out1]\n"
      "set_max_transition 0.6 [current_design]\n"
      "set_max_capacitance 0.05 [current_design]\n",
      log);
  REQUIRE(sdc.clocks.size() == 1);
  CHECK(sdc.clocks[0].period_ns == doctest::Approx(5.0));
  CHECK(sdc.clocks[0].source_port == "clk");
  CHECK(sdc.input_delay("in") == doctest::Approx(1.0));
  CHECK(sdc.output_delay("out2") == doctest::Approx(0.5));
  CHECK(sdc.port_load("out1") == doctest::Approx(4.0));
  CHECK(sdc.max_transition_ns == doctest::Approx(0.6));
  CHECK(sdc.max_capacitance_ff == doctest::Approx(50.0));
}

TEST_CASE("sdc: unsupported command is named") {
  Log log;
  try {
    io::parse_sdc("set_false_path -from [get_ports a]\n", log);
    FAIL("expected UnsupportedCommand");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedCommand);
    CHECK(std::string(e.what()).find("set_false_path") != std::string::npos);
  }
}

TEST_CASE("def: component placement parses") {
  const TechLibrary& tech = toy_tech();
  const std::string def = R"(
VERSION 5.8 ;
DESIGN t ;
UNITS DISTANCE MICRONS 1000 ;
DIEAREA ( 0 0 ) ( 10000 10000 ) ;
COMPONENTS 1 ;
- u1 INVX1 + PLACED ( 1000 2400 ) N ;
END COMPONENTS
END DESIGN
)";
  Log log;
  Design d = io::parse_def(def, tech, log);
  REQUIRE(d.instances.size() == 1);
  CHECK(d.instances[0].loc == Point{1000, 2400});
  CHECK(d.instances[0].status == PlaceStatus::Placed);
}

TEST_CASE("def: routed segment parses to one horizontal wire") {
  const TechLibrary& tech = toy_tech();
  const std::string def = R"(
VERSION 5.8 ;
DESIGN t ;
DIEAREA ( 0 0 ) ( 10000 10000 ) ;
COMPONENTS 0 ;
END COMPONENTS
PINS 0 ;
END PINS
NETS 1 ;
- n1 + USE SIGNAL
  + ROUTED metal1 ( 0 0 ) ( 400 0 )
;
END NETS
END DESIGN
)";
  Log log;
  Design d = io::parse_def(def, tech, log);
  REQUIRE(d.nets.size() == 1);
  REQUIRE(d.nets[0].wires.size() == 1);
  const WireSeg& w = d.nets[0].wires[0];
  CHECK(w.horizontal());
  CHECK(w.length() == 400);
  CHECK(w.layer == 1);
}

TEST_CASE("def: unsupported orientation rejected") {
  const TechLibrary& tech = toy_tech();
  const std::string def = R"(
VERSION 5.8 ;
DESIGN t ;
DIEAREA ( 0 0 ) ( 10000 10000 ) ;
COMPONENTS 1 ;
- u1 INVX1 + PLACED ( 0 0 ) S ;
END COMPONENTS
END DESIGN
)";
  Log log;
  CHECK_THROWS_WITH_AS(io::parse_def(def, tech, log), doctest::Contains("orientation"), Error);
}

TEST_CASE("def: roundtrip identity on random designs") {
  const TechLibrary& tech = toy_tech();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Design d = testsupport::random_design(tech, seed);
    const std::string def = io::write_def(d);
    Log log;
    Design back = io::parse_def(def, tech, log);
    std::string why;
    const bool equal = deep_equal(d, back, &why);
    CHECK_MESSAGE(equal, "seed ", seed, ": ", why);
    // writer o parser is idempotent on the text form
    CHECK(io::write_def(back) == def);
  }
}

TEST_CASE("svg: deterministic and shaped by content") {
  const TechLibrary& tech = toy_tech();
  Design d = testsupport::random_design(tech, 7);
  const std::string a = io::render_layout_svg(d);
  const std::string b = io::render_layout_svg(d);
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  // one die rect plus one rect per row at minimum
  std::size_t rects = 0;
  for (std::size_t at = a.find("<rect"); at != std::string::npos; at = a.find("<rect", at + 1))
    ++rects;
  CHECK(rects >= 1 + d.rows.size());
}

TEST_CASE("svg: all instance rects stay inside the viewBox") {
  const TechLibrary& tech = toy_tech();
  Design d = testsupport::random_design(tech, 11);
  const std::string svg = io::render_layout_svg(d);
  // oracle: every placed instance lies in the die, so the flipped y fits too
  for (const auto& inst : d.instances) {
    if (!inst.placed()) continue;
    const Rect r = d.instance_rect(inst);
    CHECK(r.ll.x >= d.die.ll.x);
    CHECK(r.ur.x <= d.die.ur.x);
  }
  CHECK(svg.find("viewBox=\"0 0 ") != std::string::npos);
}
