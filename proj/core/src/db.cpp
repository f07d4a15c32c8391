#include "pdesk/db.hpp"

#include <algorithm>
#include <unordered_set>

namespace pdesk {

Design build_design(const TechLibrary& tech, const NetlistAST& netlist, Log& log) {
  Design d;
  d.tech = &tech;
  d.name = netlist.module_name;

  // Ports first; each port name is also a net.
  for (const auto& p : netlist.ports) {
    PortPin& port = d.add_port(p.name, p.dir);
    Net& net = d.add_net(p.name);
    d.connect_port(port.id, net.id);
  }
  for (const auto& w : netlist.wires) {
    if (d.net_by_name.count(w)) continue;  // port-declared
    d.add_net(w);
  }

  for (const auto& decl : netlist.instances) {
    const int master = tech.master_index(decl.master);
    if (master < 0) throw Error(ErrorCode::UnknownMaster, decl.master);
    if (d.instance_by_name.count(decl.name)) throw Error(ErrorCode::DuplicateInstance, decl.name);
    Instance& inst = d.add_instance(decl.name, master);
    for (const auto& conn : decl.connections) {
      const int pin = tech.masters[master].pin_index(conn.pin);
      if (pin < 0) throw Error(ErrorCode::UnknownPin, decl.master + "." + conn.pin);
      auto net_it = d.net_by_name.find(conn.net);
      if (net_it == d.net_by_name.end()) throw Error(ErrorCode::UndeclaredWire, conn.net);
      d.connect(inst.id, pin, net_it->second);
    }
  }

  // Power/ground rails live on special nets from day one.
  d.add_net("VDD", PinUse::Power);
  d.add_net("VSS", PinUse::Ground);

  for (const auto& net : d.nets) {
    if (net.is_pg()) continue;
    if (net.pins.size() < 2)
      log.warn("dangling net '" + net.name + "' (" + std::to_string(net.pins.size()) + " pins)");
  }
  return d;
}

namespace {

// Uniform bucket grid; an accelerator only, the scan defines correctness.
struct BucketGrid {
  Rect extent;
  Dbu bucket = 1;
  int nx = 1, ny = 1;
  std::vector<std::vector<int>> buckets;

  explicit BucketGrid(const Design& design) {
    extent = design.die;
    Dbu rh = 0;
    if (design.tech != nullptr && !design.tech->sites.empty()) rh = design.row_height();
    bucket = rh > 0 ? rh * 10 : std::max<Dbu>(1, extent.width() / 16);
    if (bucket <= 0) bucket = 1;
    nx = std::max<int>(1, static_cast<int>((extent.width() + bucket - 1) / bucket));
    ny = std::max<int>(1, static_cast<int>((extent.height() + bucket - 1) / bucket));
    buckets.resize(static_cast<std::size_t>(nx) * ny);
    for (const auto& inst : design.instances) {
      if (!inst.placed()) continue;
      const Rect r = design.instance_rect(inst);
      insert(inst.id, r);
    }
  }

  void span(const Rect& r, int& x0, int& x1, int& y0, int& y1) const {
    auto clamp_x = [&](Dbu v) {
      return std::clamp<int>(static_cast<int>((v - extent.ll.x) / bucket), 0, nx - 1);
    };
    auto clamp_y = [&](Dbu v) {
      return std::clamp<int>(static_cast<int>((v - extent.ll.y) / bucket), 0, ny - 1);
    };
    x0 = clamp_x(r.ll.x);
    x1 = clamp_x(r.ur.x);
    y0 = clamp_y(r.ll.y);
    y1 = clamp_y(r.ur.y);
  }

  void insert(int id, const Rect& r) {
    int x0, x1, y0, y1;
    span(r, x0, x1, y0, y1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        buckets[static_cast<std::size_t>(y) * nx + x].push_back(id);
  }
};

}  // namespace

std::vector<int> query_region(const Design& design, const Rect& window) {
  std::vector<int> out;
  if (!window.valid()) return out;
  BucketGrid grid(design);
  int x0, x1, y0, y1;
  grid.span(window, x0, x1, y0, y1);
  std::unordered_set<int> seen;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      for (int id : grid.buckets[static_cast<std::size_t>(y) * grid.nx + x]) {
        if (!seen.insert(id).second) continue;
        if (design.instance_rect(design.instances[id]).intersects(window)) out.push_back(id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntegrityViolation> validate(const Design& design) {
  std::vector<IntegrityViolation> out;

  for (const auto& net : design.nets) {
    if (net.is_pg()) continue;
    int drivers = 0;
    for (const auto& pin : net.pins) {
      if (pin.is_port()) {
        if (design.ports[pin.port].dir == PinDir::Input) ++drivers;
      } else if (design.pin_dir(pin) == PinDir::Output) {
        ++drivers;
      }
    }
    if (drivers > 1)
      out.push_back({ViolationKind::MultiDriver, net.id, -1,
                     "net " + net.name + " has " + std::to_string(drivers) + " drivers"});
  }

  const bool has_rows = !design.rows.empty();
  for (const auto& inst : design.instances) {
    const CellMaster& m = design.master_of(inst);
    // Unconnected signal inputs (fillers have no pins).
    for (std::size_t p = 0; p < m.pins.size(); ++p) {
      if (m.pins[p].dir != PinDir::Input) continue;
      if (m.pins[p].use == PinUse::Power || m.pins[p].use == PinUse::Ground) continue;
      if (inst.pin_nets[p] < 0)
        out.push_back({ViolationKind::UnconnectedInput, inst.id, static_cast<int>(p),
                       inst.name + "/" + m.pins[p].name + " unconnected"});
    }

    if (!inst.placed()) continue;
    const Rect r = design.instance_rect(inst);
    if (m.cls == MasterClass::Core || m.cls == MasterClass::Block || m.cls == MasterClass::Filler) {
      if (!design.core.contains(r))
        out.push_back({ViolationKind::OutOfCore, inst.id, -1, inst.name + " outside core"});
    }
    if ((m.cls == MasterClass::Core || m.cls == MasterClass::Filler) && has_rows) {
      const Row* row = nullptr;
      for (const auto& candidate : design.rows) {
        if (candidate.y == inst.loc.y) {
          row = &candidate;
          break;
        }
      }
      if (row == nullptr) {
        out.push_back({ViolationKind::OffRow, inst.id, -1, inst.name + " not on a row"});
      } else {
        const Dbu sw = design.tech->sites[row->site].width;
        if ((inst.loc.x - row->x) % sw != 0)
          out.push_back({ViolationKind::OffSite, inst.id, -1, inst.name + " off site grid"});
      }
    }
  }
  return out;
}

std::string violation_str(const Design& design, const IntegrityViolation& v) {
  (void)design;
  switch (v.kind) {
    case ViolationKind::MultiDriver: return "MultiDriver: " + v.detail;
    case ViolationKind::OffSite: return "OffSite: " + v.detail;
    case ViolationKind::OffRow: return "OffRow: " + v.detail;
    case ViolationKind::OutOfCore: return "OutOfCore: " + v.detail;
    case ViolationKind::UnconnectedInput: return "UnconnectedInput: " + v.detail;
    case ViolationKind::Overlap: return "Overlap: " + v.detail;
    case ViolationKind::Unplaced: return "Unplaced: " + v.detail;
  }
  return v.detail;
}

}  // namespace pdesk
