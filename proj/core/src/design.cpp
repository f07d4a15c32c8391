#include "pdesk/design.hpp"

#include <algorithm>

#include "pdesk/diag.hpp"

namespace pdesk {

Rect SpecialSeg::rect() const {
  const Dbu h = width / 2;
  if (a.y == b.y) {
    const Dbu x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x);
    return {{x0, a.y - h}, {x1, a.y + h}};
  }
  const Dbu y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
  return {{a.x - h, y0}, {a.x + h, y1}};
}

const Instance* Design::find_instance(const std::string& n) const {
  auto it = instance_by_name.find(n);
  return it == instance_by_name.end() ? nullptr : &instances[it->second];
}

const Net* Design::find_net(const std::string& n) const {
  auto it = net_by_name.find(n);
  return it == net_by_name.end() ? nullptr : &nets[it->second];
}

const PortPin* Design::find_port(const std::string& n) const {
  auto it = port_by_name.find(n);
  return it == port_by_name.end() ? nullptr : &ports[it->second];
}

Instance& Design::add_instance(const std::string& n, int master, InstKind kind) {
  if (instance_by_name.count(n))
    throw Error(ErrorCode::DuplicateInstance, n);
  Instance inst;
  inst.id = static_cast<int>(instances.size());
  inst.name = n;
  inst.master = master;
  inst.kind = kind;
  inst.pin_nets.assign(tech->masters[master].pins.size(), -1);
  instance_by_name[n] = inst.id;
  instances.push_back(std::move(inst));
  return instances.back();
}

Net& Design::add_net(const std::string& n, PinUse use) {
  if (net_by_name.count(n))
    throw Error(ErrorCode::DuplicateInstance, "net " + n);
  Net net;
  net.id = static_cast<int>(nets.size());
  net.name = n;
  net.use = use;
  net_by_name[n] = net.id;
  nets.push_back(std::move(net));
  return nets.back();
}

PortPin& Design::add_port(const std::string& n, PinDir dir) {
  if (port_by_name.count(n))
    throw Error(ErrorCode::DuplicateInstance, "port " + n);
  PortPin port;
  port.id = static_cast<int>(ports.size());
  port.name = n;
  port.dir = dir;
  port_by_name[n] = port.id;
  ports.push_back(std::move(port));
  return ports.back();
}

void Design::connect(int inst_id, int pin_idx, int net_id) {
  Instance& inst = instances[inst_id];
  if (inst.pin_nets[pin_idx] == net_id) return;
  if (inst.pin_nets[pin_idx] >= 0) disconnect(inst_id, pin_idx);
  inst.pin_nets[pin_idx] = net_id;
  nets[net_id].pins.push_back({inst_id, pin_idx, -1});
}

void Design::disconnect(int inst_id, int pin_idx) {
  Instance& inst = instances[inst_id];
  const int net_id = inst.pin_nets[pin_idx];
  if (net_id < 0) return;
  auto& pins = nets[net_id].pins;
  pins.erase(std::remove(pins.begin(), pins.end(), PinRef{inst_id, pin_idx, -1}), pins.end());
  inst.pin_nets[pin_idx] = -1;
}

void Design::connect_port(int port_id, int net_id) {
  PortPin& port = ports[port_id];
  if (port.net == net_id) return;
  if (port.net >= 0) {
    auto& pins = nets[port.net].pins;
    pins.erase(std::remove(pins.begin(), pins.end(), PinRef{-1, -1, port_id}), pins.end());
  }
  port.net = net_id;
  nets[net_id].pins.push_back({-1, -1, port_id});
}

Rect Design::instance_rect(const Instance& inst) const {
  const CellMaster& m = master_of(inst);
  return {inst.loc, {inst.loc.x + m.width, inst.loc.y + m.height}};
}

Point Design::pin_location(const PinRef& ref) const {
  if (ref.is_port()) return ports[ref.port].loc;
  const Instance& inst = instances[ref.inst];
  const CellMaster& m = master_of(inst);
  const MasterPin& pin = m.pins[ref.pin];
  // Pin position = center of the first shape, orientation applied.
  Point c{m.width / 2, m.height / 2};
  if (!pin.shapes.empty()) c = pin.shapes[0].rect.center();
  if (inst.orient == Orient::FS) c.y = m.height - c.y;
  return {inst.loc.x + c.x, inst.loc.y + c.y};
}

PinDir Design::pin_dir(const PinRef& ref) const {
  if (ref.is_port()) return ports[ref.port].dir;
  return master_of(instances[ref.inst]).pins[ref.pin].dir;
}

PinUse Design::pin_use(const PinRef& ref) const {
  if (ref.is_port()) return PinUse::Signal;
  return master_of(instances[ref.inst]).pins[ref.pin].use;
}

double Design::pin_cap_ff(const PinRef& ref) const {
  if (ref.is_port()) return 0.0;
  return master_of(instances[ref.inst]).pins[ref.pin].cap_ff;
}

std::string Design::pin_name(const PinRef& ref) const {
  if (ref.is_port()) return ports[ref.port].name;
  return instances[ref.inst].name + "/" + master_of(instances[ref.inst]).pins[ref.pin].name;
}

int Design::driver_index(const Net& net) const {
  for (std::size_t i = 0; i < net.pins.size(); ++i) {
    const PinRef& p = net.pins[i];
    if (p.is_port()) {
      if (ports[p.port].dir == PinDir::Input) return static_cast<int>(i);
    } else if (pin_dir(p) == PinDir::Output) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

Dbu Design::row_height() const { return tech->core_site().height; }
Dbu Design::site_width() const { return tech->core_site().width; }

void Design::rebuild_maps() {
  instance_by_name.clear();
  net_by_name.clear();
  port_by_name.clear();
  for (const auto& i : instances) instance_by_name[i.name] = i.id;
  for (const auto& n : nets) net_by_name[n.name] = n.id;
  for (const auto& p : ports) port_by_name[p.name] = p.id;
}

namespace {

template <typename T>
bool field_eq(const T& a, const T& b, const char* what, std::string* why) {
  if (a == b) return true;
  if (why) *why = what;
  return false;
}

}  // namespace

bool deep_equal(const Design& a, const Design& b, std::string* why) {
  if (!field_eq(a.name, b.name, "design name", why)) return false;
  if (!field_eq(a.die, b.die, "die", why)) return false;
  if (!field_eq(a.core, b.core, "core", why)) return false;

  if (a.rows.size() != b.rows.size()) {
    if (why) *why = "row count";
    return false;
  }
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const Row &ra = a.rows[i], &rb = b.rows[i];
    if (ra.name != rb.name || ra.x != rb.x || ra.y != rb.y || ra.site != rb.site ||
        ra.count != rb.count || ra.orient != rb.orient) {
      if (why) *why = "row " + ra.name;
      return false;
    }
  }

  if (a.instances.size() != b.instances.size()) {
    if (why) *why = "instance count";
    return false;
  }
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    const Instance &ia = a.instances[i], &ib = b.instances[i];
    if (ia.name != ib.name || ia.master != ib.master || !(ia.loc == ib.loc) ||
        ia.orient != ib.orient || ia.status != ib.status || ia.kind != ib.kind ||
        ia.pin_nets != ib.pin_nets) {
      if (why) *why = "instance " + ia.name;
      return false;
    }
  }

  if (a.ports.size() != b.ports.size()) {
    if (why) *why = "port count";
    return false;
  }
  for (std::size_t i = 0; i < a.ports.size(); ++i) {
    const PortPin &pa = a.ports[i], &pb = b.ports[i];
    if (pa.name != pb.name || pa.dir != pb.dir || pa.net != pb.net || !(pa.loc == pb.loc) ||
        pa.layer != pb.layer || !(pa.shape == pb.shape) || pa.status != pb.status) {
      if (why) *why = "port " + pa.name;
      return false;
    }
  }

  if (a.nets.size() != b.nets.size()) {
    if (why) *why = "net count";
    return false;
  }
  for (std::size_t i = 0; i < a.nets.size(); ++i) {
    const Net &na = a.nets[i], &nb = b.nets[i];
    if (na.name != nb.name || na.use != nb.use || !(na.pins == nb.pins) ||
        !(na.wires == nb.wires) || !(na.vias == nb.vias) || !(na.special == nb.special) ||
        !(na.special_vias == nb.special_vias)) {
      if (why) *why = "net " + na.name;
      return false;
    }
  }
  return true;
}

}  // namespace pdesk
