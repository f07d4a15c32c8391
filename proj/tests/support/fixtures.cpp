#include "fixtures.hpp"

namespace testsupport {

using namespace pdesk;

namespace {

MasterPin make_pin(const std::string& name, PinDir dir, Dbu cx, Dbu cy, double cap,
                   const std::string& function = "") {
  MasterPin pin;
  pin.name = name;
  pin.dir = dir;
  pin.shapes.push_back({1, {{cx - 50, cy - 50}, {cx + 50, cy + 50}}});
  pin.cap_ff = cap;
  if (!function.empty()) {
    pin.function = function;
    pin.function_tree = parse_bool_function(function);
  }
  return pin;
}

NldmTable flat_table(double v) {
  NldmTable t;
  t.slew_axis = {0.02, 0.5};
  t.load_axis = {1.0, 32.0};
  t.values = {v, v, v, v};
  return t;
}

TimingArc comb_arc(int from, int to, double delay, ArcSense sense) {
  TimingArc arc;
  arc.from_pin = from;
  arc.to_pin = to;
  arc.type = ArcType::Combinational;
  arc.sense = sense;
  arc.cell_rise = flat_table(delay);
  arc.cell_fall = flat_table(delay);
  arc.rise_transition = flat_table(0.05);
  arc.fall_transition = flat_table(0.05);
  return arc;
}

}  // namespace

TechLibrary make_unit_tech() {
  TechLibrary tech;
  tech.dbu_per_micron = 1000;
  tech.voltage = 1.0;
  for (int i = 1; i <= 5; ++i) {
    Layer l;
    l.name = "metal" + std::to_string(i);
    l.index = i;
    l.dir = i % 2 == 1 ? LayerDir::Horizontal : LayerDir::Vertical;
    l.pitch = i <= 3 ? 240 : 480;
    l.width = i <= 3 ? 120 : 240;
    l.spacing = i <= 3 ? 120 : 240;
    l.res_per_dbu = 0.001;
    l.cap_per_dbu = 0.0002;
    tech.layers.push_back(l);
  }
  tech.sites.push_back({"core", 240, 2400});

  {
    CellMaster inv;
    inv.name = "INV";
    inv.width = 480;
    inv.height = 2400;
    inv.cls = MasterClass::Core;
    inv.pins.push_back(make_pin("A", PinDir::Input, 160, 1200, 1.0));
    inv.pins.push_back(make_pin("Y", PinDir::Output, 320, 1200, 0.0, "!A"));
    inv.is_inverter = true;
    inv.has_liberty = true;
    inv.arcs.push_back(comb_arc(0, 1, 0.1, ArcSense::NegativeUnate));
    tech.masters.push_back(std::move(inv));
  }
  {
    CellMaster buf;
    buf.name = "BUF";
    buf.width = 480;
    buf.height = 2400;
    buf.cls = MasterClass::Core;
    buf.pins.push_back(make_pin("A", PinDir::Input, 160, 1200, 1.0));
    buf.pins.push_back(make_pin("Y", PinDir::Output, 320, 1200, 0.0, "A"));
    buf.is_buffer = true;
    buf.has_liberty = true;
    buf.arcs.push_back(comb_arc(0, 1, 0.1, ArcSense::PositiveUnate));
    tech.masters.push_back(std::move(buf));
  }
  {
    CellMaster nd;
    nd.name = "ND2";
    nd.width = 720;
    nd.height = 2400;
    nd.cls = MasterClass::Core;
    nd.pins.push_back(make_pin("A", PinDir::Input, 180, 1200, 1.2));
    nd.pins.push_back(make_pin("B", PinDir::Input, 360, 1200, 1.2));
    nd.pins.push_back(make_pin("Y", PinDir::Output, 540, 1200, 0.0, "!(A&B)"));
    nd.has_liberty = true;
    nd.arcs.push_back(comb_arc(0, 2, 0.12, ArcSense::NegativeUnate));
    nd.arcs.push_back(comb_arc(1, 2, 0.12, ArcSense::NegativeUnate));
    tech.masters.push_back(std::move(nd));
  }
  {
    CellMaster blk;
    blk.name = "BLOCK1";
    blk.width = 12000;
    blk.height = 9600;
    blk.cls = MasterClass::Block;
    blk.pins.push_back(make_pin("PI", PinDir::Input, 400, 4800, 5.0));
    blk.pins.push_back(make_pin("PO", PinDir::Output, 11600, 4800, 0.0));
    blk.obstructions.push_back({{0, 0}, {12000, 9600}});
    blk.obs_layers.push_back(1);
    tech.masters.push_back(std::move(blk));
  }
  {
    CellMaster fill;
    fill.name = "FILLU1";
    fill.width = 240;
    fill.height = 2400;
    fill.cls = MasterClass::Filler;
    tech.masters.push_back(std::move(fill));
  }
  tech.rebuild_maps();
  return tech;
}

}  // namespace testsupport
