#pragma once

#include <string>

#include "pdesk/design.hpp"
#include "pdesk/diag.hpp"
#include "pdesk/netlist.hpp"
#include "pdesk/sdc.hpp"
#include "pdesk/tech.hpp"

namespace pdesk::io {

// ---- LEF (physical technology) ----
// Subset: UNITS, LAYER (routing), SITE, MACRO/PIN/OBS with RECT geometry.
// Unknown keywords are skipped with a warning (permissive mode).
TechLibrary parse_tech_lef(const std::string& text, Log& log);

// ---- Liberty (timing/power) ----
// Subset: cell, pin(direction, capacitance, function, clock), ff, timing
// groups (cell_rise/cell_fall/rise_transition/fall_transition, constraint
// tables, timing_sense, timing_type), internal_power, leakage.
// Merges into an existing tech (matched by cell name); cells missing from
// the LEF side are created with zero size and warned.
void parse_liberty(const std::string& text, TechLibrary& tech, Log& log);

// ---- Structural netlist ----
// Gate-level subset: module/endmodule, scalar input/output/wire, named
// connections only.
NetlistAST parse_netlist(const std::string& text, Log& log);

// ---- DEF ----
// Subset: DIEAREA, ROW, COMPONENTS (+PLACED/FIXED/+SOURCE), PINS, NETS
// (+ROUTED segments and vias), SPECIALNETS. write o parse is the identity
// on the subset.
Design parse_def(const std::string& text, const TechLibrary& tech, Log& log);
std::string write_def(const Design& design);

// ---- SDC ----
SdcConstraints parse_sdc(const std::string& text, Log& log);

// ---- SVG rendering ----
struct SvgOptions {
  bool flylines = false;
  bool wires = true;
  bool rows = true;
  double scale = 0.01;  // SVG px per DBU
};
std::string render_layout_svg(const Design& design, const SvgOptions& options = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pdesk::io
