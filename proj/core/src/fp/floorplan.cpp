#include "pdesk/fp/floorplan.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pdesk::fp {

namespace {

Dbu snap_up(Dbu v, Dbu unit) { return (v + unit - 1) / unit * unit; }

long long placeable_area(const Design& d, long long& macro_area) {
  long long total = 0;
  macro_area = 0;
  for (const auto& inst : d.instances) {
    const CellMaster& m = d.master_of(inst);
    if (m.cls == MasterClass::Core) {
      total += static_cast<long long>(m.width) * m.height;
    } else if (m.cls == MasterClass::Block) {
      const long long a = static_cast<long long>(m.width) * m.height;
      total += a;
      macro_area += a;
    }
  }
  return total;
}

}  // namespace

void init_floorplan(Design& d, const FloorplanSpec& spec) {
  if (!d.rows.empty())
    throw Error(ErrorCode::PreconditionViolated, "init_floorplan: design already has rows");
  if (spec.utilization <= 0.0 || spec.utilization >= 1.0)
    throw Error(ErrorCode::ConfigError, "utilization must be in (0, 1)");
  if (spec.aspect <= 0.0) throw Error(ErrorCode::ConfigError, "aspect must be positive");

  const Site& site = d.tech->core_site();
  long long macro_area = 0;
  const long long area = placeable_area(d, macro_area);
  const double need = static_cast<double>(area) / spec.utilization;
  const double w0 = std::sqrt(need / spec.aspect);
  const double h0 = w0 * spec.aspect;

  Dbu core_w = snap_up(static_cast<Dbu>(std::ceil(w0)), site.width);
  Dbu core_h = snap_up(static_cast<Dbu>(std::ceil(h0)), site.height);
  core_w = std::max(core_w, site.width);
  core_h = std::max(core_h, site.height);
  // snapping down one axis could drop below the area target; width grows
  while (static_cast<double>(core_w) * static_cast<double>(core_h) < need)
    core_w += site.width;

  if (macro_area > core_w * core_h)
    throw Error(ErrorCode::UtilizationInfeasible,
                "macro area " + std::to_string(macro_area) + " exceeds core area " +
                    std::to_string(core_w * core_h));
  for (const auto& inst : d.instances) {
    const CellMaster& m = d.master_of(inst);
    if (m.cls == MasterClass::Block && (m.width > core_w || m.height > core_h))
      throw Error(ErrorCode::UtilizationInfeasible,
                  "macro " + inst.name + " does not fit the " + std::to_string(core_w) + "x" +
                      std::to_string(core_h) + " core");
  }

  d.core = {{spec.margin, spec.margin}, {spec.margin + core_w, spec.margin + core_h}};
  d.die = {{0, 0}, {d.core.ur.x + spec.margin, d.core.ur.y + spec.margin}};

  const int row_count = static_cast<int>(core_h / site.height);
  const int sites_per_row = static_cast<int>(core_w / site.width);
  for (int r = 0; r < row_count; ++r) {
    Row row;
    row.name = "ROW_" + std::to_string(r);
    row.site = 0;
    row.x = d.core.ll.x;
    row.y = d.core.ll.y + r * site.height;
    row.count = sites_per_row;
    row.orient = r % 2 == 0 ? Orient::N : Orient::FS;
    d.rows.push_back(std::move(row));
  }
}

void place_io_pins(Design& d, const std::vector<std::string>& order) {
  if (d.rows.empty())
    throw Error(ErrorCode::PreconditionViolated, "place_io_pins: floorplan not initialized");
  if (d.ports.empty()) return;

  // Boundary slots, clockwise from the lower-left corner: left edge upward,
  // top edge rightward, right edge downward, bottom edge leftward.
  const Layer* vlayer = nullptr;  // for top/bottom edges
  const Layer* hlayer = nullptr;  // for left/right edges
  for (const auto& l : d.tech->layers) {
    if (l.dir == LayerDir::Vertical && vlayer == nullptr) vlayer = &l;
    if (l.dir == LayerDir::Horizontal && l.index > 1 && hlayer == nullptr) hlayer = &l;
  }
  if (vlayer == nullptr || hlayer == nullptr)
    throw Error(ErrorCode::PreconditionViolated, "need both routing directions for IO");

  struct Slot {
    Point loc;
    int layer;
  };
  std::vector<Slot> slots;
  for (Dbu y : d.tech->tracks_in(*hlayer, d.die.ll.y + 1, d.die.ur.y - 1))
    slots.push_back({{d.die.ll.x, y}, hlayer->index});
  for (Dbu x : d.tech->tracks_in(*vlayer, d.die.ll.x + 1, d.die.ur.x - 1))
    slots.push_back({{x, d.die.ur.y}, vlayer->index});
  {
    auto right = d.tech->tracks_in(*hlayer, d.die.ll.y + 1, d.die.ur.y - 1);
    std::reverse(right.begin(), right.end());
    for (Dbu y : right) slots.push_back({{d.die.ur.x, y}, hlayer->index});
    auto bottom = d.tech->tracks_in(*vlayer, d.die.ll.x + 1, d.die.ur.x - 1);
    std::reverse(bottom.begin(), bottom.end());
    for (Dbu x : bottom) slots.push_back({{x, d.die.ll.y}, vlayer->index});
  }

  std::vector<int> port_ids;
  if (!order.empty()) {
    for (const auto& name : order) {
      auto it = d.port_by_name.find(name);
      if (it == d.port_by_name.end())
        throw Error(ErrorCode::ConfigError, "io order names unknown port '" + name + "'");
      port_ids.push_back(it->second);
    }
    for (const auto& p : d.ports)
      if (std::find(port_ids.begin(), port_ids.end(), p.id) == port_ids.end())
        port_ids.push_back(p.id);
  } else {
    for (const auto& p : d.ports) port_ids.push_back(p.id);
  }

  const std::size_t n = port_ids.size();
  if (n > slots.size())
    throw Error(ErrorCode::TooManyPorts, std::to_string(n) + " ports for " +
                                             std::to_string(slots.size()) + " boundary slots");
  for (std::size_t k = 0; k < n; ++k) {
    const Slot& slot = slots[k * slots.size() / n];
    PortPin& port = d.ports[port_ids[k]];
    port.loc = slot.loc;
    port.layer = slot.layer;
    const Dbu w = d.tech->layers[slot.layer - 1].width;
    port.shape = {{-w, -w}, {w, w}};
    port.status = PlaceStatus::Fixed;
  }
}

namespace {

// Connections from a macro's nets to ports on each die edge
// (0 left, 1 top, 2 right, 3 bottom).
std::array<int, 4> edge_connectivity(const Design& d, const Instance& inst) {
  std::array<int, 4> count{0, 0, 0, 0};
  for (int net_id : inst.pin_nets) {
    if (net_id < 0) continue;
    for (const auto& pin : d.nets[net_id].pins) {
      if (!pin.is_port()) continue;
      const PortPin& port = d.ports[pin.port];
      if (port.status == PlaceStatus::Unplaced) continue;
      if (port.loc.x == d.die.ll.x) ++count[0];
      else if (port.loc.y == d.die.ur.y) ++count[1];
      else if (port.loc.x == d.die.ur.x) ++count[2];
      else ++count[3];
    }
  }
  return count;
}

}  // namespace

void place_macros(Design& d) {
  std::vector<int> blocks;
  for (const auto& inst : d.instances)
    if (d.master_of(inst).cls == MasterClass::Block && !inst.fixed())
      blocks.push_back(inst.id);
  if (blocks.empty()) return;

  struct Key {
    int io;
    long long area;
    int id;
  };
  std::vector<Key> keys;
  for (int id : blocks) {
    const auto conn = edge_connectivity(d, d.instances[id]);
    const CellMaster& m = d.master_of(d.instances[id]);
    keys.push_back({conn[0] + conn[1] + conn[2] + conn[3],
                    static_cast<long long>(m.width) * m.height, id});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.io != b.io) return a.io > b.io;
    if (a.area != b.area) return a.area > b.area;
    return a.id < b.id;
  });

  const Dbu sw = d.site_width();
  const Dbu rh = d.row_height();
  std::vector<Rect> placed;
  for (const auto& key : keys) {
    Instance& inst = d.instances[key.id];
    const CellMaster& m = d.master_of(inst);
    const auto conn = edge_connectivity(d, inst);
    // preferred edge order: best connectivity first, ties left,top,right,bottom
    std::array<int, 4> edges{0, 1, 2, 3};
    std::stable_sort(edges.begin(), edges.end(),
                     [&](int a, int b) { return conn[a] > conn[b]; });

    bool done = false;
    for (int edge : edges) {
      // slide along the edge from its clockwise start corner
      const int steps = edge == 0 || edge == 2
                            ? static_cast<int>((d.core.height() - m.height) / rh) + 1
                            : static_cast<int>((d.core.width() - m.width) / sw) + 1;
      for (int s = 0; s < steps && !done; ++s) {
        Point loc;
        switch (edge) {
          case 0: loc = {d.core.ll.x, d.core.ll.y + s * rh}; break;
          case 1: loc = {d.core.ll.x + s * sw, d.core.ur.y - m.height}; break;
          case 2: loc = {d.core.ur.x - m.width, d.core.ll.y + s * rh}; break;
          default: loc = {d.core.ll.x + s * sw, d.core.ll.y}; break;
        }
        // snap into the row/site grid
        loc.x = d.core.ll.x + (loc.x - d.core.ll.x) / sw * sw;
        loc.y = d.core.ll.y + (loc.y - d.core.ll.y) / rh * rh;
        const Rect r{loc, {loc.x + m.width, loc.y + m.height}};
        if (!d.core.contains(r)) continue;
        bool clash = false;
        for (const auto& other : placed)
          if (other.overlaps(r)) {
            clash = true;
            break;
          }
        if (clash) continue;
        inst.loc = loc;
        inst.status = PlaceStatus::Fixed;
        placed.push_back(r);
        done = true;
      }
      if (done) break;
    }
    if (!done)
      throw Error(ErrorCode::MacroOverflow, "cannot place macro " + inst.name);
  }
}

void gen_pdn(Design& d, const PdnSpec& spec) {
  if (d.rows.empty()) throw Error(ErrorCode::PreconditionViolated, "gen_pdn: no rows");
  if (spec.stripe_width >= spec.stripe_pitch)
    throw Error(ErrorCode::SpecInfeasible, "stripe width >= pitch");
  if (spec.stripe_layer_v < 2 || spec.stripe_layer_h < 2)
    throw Error(ErrorCode::SpecInfeasible, "stripe layers must be metal2 or above");

  auto net_id = [&](bool power) {
    for (const auto& net : d.nets)
      if (net.use == (power ? PinUse::Power : PinUse::Ground)) return net.id;
    throw Error(ErrorCode::PreconditionViolated, "VDD/VSS special nets not declared");
  };
  const int vdd = net_id(true);
  const int vss = net_id(false);

  const Dbu rh = d.row_height();
  const int rail_count = static_cast<int>(d.core.height() / rh) + 1;

  struct Stripe {
    int net;
    Dbu coord;
    bool vertical;
    int layer;
    Dbu width;
  };
  std::vector<Stripe> stripes;

  // followpin rails: boundary i at core_ll.y + i*rh, even -> VSS
  for (int i = 0; i < rail_count; ++i) {
    const Dbu y = d.core.ll.y + i * rh;
    stripes.push_back({i % 2 == 0 ? vss : vdd, y, false, 1, spec.rail_width});
  }
  // vertical stripes at offset pitch/2, alternating VDD first
  int k = 0;
  for (Dbu x = d.core.ll.x + spec.stripe_pitch / 2;
       x + spec.stripe_width / 2 <= d.core.ur.x; x += spec.stripe_pitch, ++k)
    stripes.push_back({k % 2 == 0 ? vdd : vss, x, true, spec.stripe_layer_v, spec.stripe_width});
  // horizontal stripes on the upper layer
  k = 0;
  for (Dbu y = d.core.ll.y + spec.stripe_pitch / 2;
       y + spec.stripe_width / 2 <= d.core.ur.y; y += spec.stripe_pitch, ++k)
    stripes.push_back({k % 2 == 0 ? vdd : vss, y, false, spec.stripe_layer_h, spec.stripe_width});

  for (const auto& s : stripes) {
    SpecialSeg seg;
    seg.layer = s.layer;
    seg.width = s.width;
    seg.shape = s.layer == 1 ? SpecialShapeKind::Followpin : SpecialShapeKind::Stripe;
    if (s.vertical) {
      seg.a = {s.coord, d.core.ll.y};
      seg.b = {s.coord, d.core.ur.y};
    } else {
      seg.a = {d.core.ll.x, s.coord};
      seg.b = {d.core.ur.x, s.coord};
    }
    d.nets[s.net].special.push_back(seg);
  }

  // via stacks at same-net crossings of perpendicular shapes
  for (const auto& a : stripes) {
    if (!a.vertical) continue;
    for (const auto& b : stripes) {
      if (b.vertical || a.net != b.net) continue;
      const int lo = std::min(a.layer, b.layer);
      const int hi = std::max(a.layer, b.layer);
      for (int l = lo; l < hi; ++l)
        d.nets[a.net].special_vias.push_back({l, {a.coord, b.coord}});
    }
  }
}

std::vector<Rect> macro_halos(const Design& d, Dbu halo) {
  std::vector<Rect> out;
  for (const auto& inst : d.instances) {
    if (!inst.placed()) continue;
    if (d.master_of(inst).cls != MasterClass::Block) continue;
    out.push_back(d.instance_rect(inst).bloat(halo));
  }
  return out;
}

}  // namespace pdesk::fp
