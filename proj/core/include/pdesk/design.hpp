#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "pdesk/geom.hpp"
#include "pdesk/tech.hpp"

namespace pdesk {

struct Row {
  std::string name;
  Dbu x = 0;
  Dbu y = 0;
  int site = 0;       // index into tech.sites
  int count = 0;      // sites in the row
  Orient orient = Orient::N;
};

enum class PlaceStatus { Unplaced, Placed, Fixed };

// Provenance of an instance; written to DEF as + SOURCE (NETLIST vs DIST).
enum class InstKind { Netlist, CtsBuffer, OptBuffer, Filler };

struct Instance {
  int id = -1;
  std::string name;
  int master = -1;  // index into tech.masters
  Point loc;        // lower-left
  Orient orient = Orient::N;
  PlaceStatus status = PlaceStatus::Unplaced;
  InstKind kind = InstKind::Netlist;
  // Net id per master pin index, -1 when unconnected.
  std::vector<int> pin_nets;

  bool placed() const { return status != PlaceStatus::Unplaced; }
  bool fixed() const { return status == PlaceStatus::Fixed; }
};

struct PortPin {
  int id = -1;
  std::string name;
  PinDir dir = PinDir::Input;
  int net = -1;
  Point loc;
  int layer = 1;
  Rect shape;  // relative to loc
  PlaceStatus status = PlaceStatus::Unplaced;
};

// Either an instance pin (inst >= 0, pin = master pin index) or a top-level
// port (port >= 0).
struct PinRef {
  int inst = -1;
  int pin = -1;
  int port = -1;

  bool is_port() const { return port >= 0; }
  friend bool operator==(const PinRef&, const PinRef&) = default;
};

struct WireSeg {
  int layer = 1;
  Point a;
  Point b;

  friend bool operator==(const WireSeg&, const WireSeg&) = default;
  Dbu length() const { return manhattan(a, b); }
  bool horizontal() const { return a.y == b.y; }
};

struct Via {
  int lower_layer = 1;  // connects lower_layer and lower_layer + 1
  Point at;
  friend bool operator==(const Via&, const Via&) = default;
};

enum class SpecialShapeKind { Followpin, Stripe };

struct SpecialSeg {
  int layer = 1;
  Point a;
  Point b;
  Dbu width = 0;
  SpecialShapeKind shape = SpecialShapeKind::Stripe;

  friend bool operator==(const SpecialSeg&, const SpecialSeg&) = default;
  Rect rect() const;  // the drawn metal, width expanded
};

struct Net {
  int id = -1;
  std::string name;
  PinUse use = PinUse::Signal;
  std::vector<PinRef> pins;
  std::vector<WireSeg> wires;
  std::vector<Via> vias;
  std::vector<SpecialSeg> special;
  std::vector<Via> special_vias;

  bool routed() const { return !wires.empty(); }
  bool is_pg() const { return use == PinUse::Power || use == PinUse::Ground; }
};

// Single source of truth shared by all tools. Instances, nets and ports are
// id-indexed; ids are dense and assigned in parse order, and every iteration
// that affects results runs in id order.
struct Design {
  std::string name;
  Rect die;
  Rect core;
  std::vector<Row> rows;
  std::vector<Instance> instances;
  std::vector<Net> nets;
  std::vector<PortPin> ports;
  const TechLibrary* tech = nullptr;

  std::unordered_map<std::string, int> instance_by_name;
  std::unordered_map<std::string, int> net_by_name;
  std::unordered_map<std::string, int> port_by_name;

  const Instance* find_instance(const std::string& n) const;
  const Net* find_net(const std::string& n) const;
  const PortPin* find_port(const std::string& n) const;
  const CellMaster& master_of(const Instance& inst) const { return tech->masters[inst.master]; }

  Instance& add_instance(const std::string& n, int master, InstKind kind = InstKind::Netlist);
  Net& add_net(const std::string& n, PinUse use = PinUse::Signal);
  PortPin& add_port(const std::string& n, PinDir dir);
  void connect(int inst_id, int pin_idx, int net_id);
  void disconnect(int inst_id, int pin_idx);
  void connect_port(int port_id, int net_id);

  Rect instance_rect(const Instance& inst) const;
  Point pin_location(const PinRef& ref) const;
  PinDir pin_dir(const PinRef& ref) const;
  PinUse pin_use(const PinRef& ref) const;
  double pin_cap_ff(const PinRef& ref) const;  // ports use SDC loads externally
  std::string pin_name(const PinRef& ref) const;
  // Driver pin of a net: instance output pin or top-level input port.
  int driver_index(const Net& net) const;  // index into net.pins, -1 if none

  Dbu row_height() const;  // height of the core site
  Dbu site_width() const;
  bool movable(const Instance& inst) const {
    return !inst.fixed() && tech->masters[inst.master].cls == MasterClass::Core;
  }

  void rebuild_maps();
};

// Structural deep-compare used by round-trip tests; ignores the tech pointer.
bool deep_equal(const Design& a, const Design& b, std::string* why = nullptr);

}  // namespace pdesk
