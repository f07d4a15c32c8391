#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdesk/diag.hpp"
#include "pdesk/expr.hpp"
#include "pdesk/geom.hpp"

namespace pdesk {

enum class LayerDir { Horizontal, Vertical };

// Routing layer. Unit RC feeds Elmore delay; pitch/width/spacing feed
// tracks, routing capacity and PDN construction.
struct Layer {
  std::string name;
  int index = 0;  // 1 = lowest metal
  LayerDir dir = LayerDir::Horizontal;
  Dbu pitch = 0;
  Dbu width = 0;
  Dbu spacing = 0;
  double res_per_dbu = 0.0;  // ohm per DBU of wire
  double cap_per_dbu = 0.0;  // fF per DBU of wire

  // Track k runs at offset + k*pitch measured from the die origin, in the
  // direction perpendicular to `dir`.
  Dbu track_offset() const { return pitch / 2; }
};

struct Site {
  std::string name;
  Dbu width = 0;
  Dbu height = 0;
};

enum class MasterClass { Core, Block, Pad, Filler };
enum class PinDir { Input, Output, Inout };
enum class PinUse { Signal, Clock, Power, Ground };

struct PinShape {
  int layer = 1;  // layer index
  Rect rect;      // relative to master lower-left, N orientation
};

// Non-linear delay model table: values[slew_i][load_j]. Also used for
// constraint and internal-power tables (then values are ns or fJ).
struct NldmTable {
  std::vector<double> slew_axis;  // ns, ascending
  std::vector<double> load_axis;  // fF, ascending
  std::vector<double> values;     // row-major [slew][load]

  bool empty() const { return values.empty(); }
  double at(std::size_t i, std::size_t j) const { return values[i * load_axis.size() + j]; }
  // Bilinear interpolation, clamped to the grid boundary (no extrapolation).
  double lookup(double slew, double load) const;
  // Value at the middle grid indices; used to collapse constraint tables.
  double nominal() const;
};

enum class ArcType { Combinational, ClkToQ, Setup, Hold };
enum class ArcSense { PositiveUnate, NegativeUnate, NonUnate };

struct TimingArc {
  int from_pin = -1;  // master pin index
  int to_pin = -1;
  ArcType type = ArcType::Combinational;
  ArcSense sense = ArcSense::NonUnate;
  // Combinational / ClkToQ: delay + output transition tables.
  // Setup / Hold: constraint tables live in cell_rise/cell_fall
  // (rise_constraint -> cell_rise, fall_constraint -> cell_fall).
  NldmTable cell_rise;
  NldmTable cell_fall;
  NldmTable rise_transition;
  NldmTable fall_transition;
};

// Per-pin internal power tables (fJ per transition).
struct PowerTables {
  NldmTable rise_power;
  NldmTable fall_power;
  bool empty() const { return rise_power.empty() && fall_power.empty(); }
  double energy_fj(double slew, double load) const;
};

struct MasterPin {
  std::string name;
  PinDir dir = PinDir::Input;
  PinUse use = PinUse::Signal;
  std::vector<PinShape> shapes;
  double cap_ff = 0.0;
  std::string function;      // liberty function string for outputs
  BoolFunction function_tree;
  bool is_state_output = false;  // function references an ff state variable
  PowerTables power;
};

struct CellMaster {
  std::string name;
  Dbu width = 0;
  Dbu height = 0;
  MasterClass cls = MasterClass::Core;
  std::vector<MasterPin> pins;
  std::vector<Rect> obstructions;  // OBS geometry, any layer folded together
  std::vector<int> obs_layers;     // layer index per obstruction

  bool is_sequential = false;
  bool is_buffer = false;
  bool is_inverter = false;
  std::string clocked_on;   // ff clock pin name
  std::string next_state;   // ff data pin name

  std::vector<TimingArc> arcs;
  double leakage_uw = 0.0;
  bool has_liberty = false;

  int pin_index(const std::string& pin_name) const;
  const MasterPin* find_pin(const std::string& pin_name) const;
  int clock_pin() const;           // first input pin with use Clock, else -1
  int output_pin() const;          // first output pin, else -1
  std::vector<int> input_pins() const;
  // "X<k>" drive-strength suffix split, e.g. NAND2X4 -> ("NAND2", 4).
  static bool split_drive(const std::string& name, std::string& prefix, int& drive);
};

// Merged physical (LEF) + timing/power (liberty) view of the technology.
struct TechLibrary {
  Dbu dbu_per_micron = 1000;
  double voltage = 1.0;  // V, liberty nom_voltage

  std::vector<Layer> layers;    // ordered by index, layers[0].index == 1
  std::vector<Site> sites;
  std::vector<CellMaster> masters;

  std::unordered_map<std::string, int> layer_by_name;
  std::unordered_map<std::string, int> master_by_name;
  std::unordered_map<std::string, int> site_by_name;

  const Layer* find_layer(const std::string& name) const;
  const CellMaster* find_master(const std::string& name) const;
  int master_index(const std::string& name) const;  // -1 when missing
  const Site& core_site() const;  // throws when no site defined

  // Mean unit RC over routing layers; used by pre-route parasitics.
  double avg_res_per_dbu() const;
  double avg_cap_per_dbu() const;

  void rebuild_maps();
  // Track coordinates of `layer` covering [lo, hi] (die-origin based).
  std::vector<Dbu> tracks_in(const Layer& layer, Dbu lo, Dbu hi) const;
};

}  // namespace pdesk
