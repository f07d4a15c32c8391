#include <sstream>

#include "pdesk/io/io.hpp"
#include "tokens.hpp"

namespace pdesk::io {

namespace {

const char* source_name(InstKind kind) {
  switch (kind) {
    case InstKind::Netlist: return "NETLIST";
    case InstKind::CtsBuffer: return "DIST";
    case InstKind::OptBuffer: return "TIMING";
    case InstKind::Filler: return "USER";
  }
  return "NETLIST";
}

InstKind source_kind(const std::string& s, Tokens& tk) {
  if (s == "NETLIST") return InstKind::Netlist;
  if (s == "DIST") return InstKind::CtsBuffer;
  if (s == "TIMING") return InstKind::OptBuffer;
  if (s == "USER") return InstKind::Filler;
  tk.fail("unknown SOURCE '" + s + "'");
}

Orient parse_orient(const std::string& s, Tokens& tk) {
  if (s == "N") return Orient::N;
  if (s == "FS") return Orient::FS;
  tk.fail("orientation '" + s + "' not supported (only N and FS)");
}

std::string via_name(int lower_layer) {
  return "VIA" + std::to_string(lower_layer) + std::to_string(lower_layer + 1);
}

// VIA<i><j> with j = i+1; returns lower layer or -1.
int parse_via_name(const std::string& s) {
  if (s.size() < 5 || s.compare(0, 3, "VIA") != 0) return -1;
  const std::string digits = s.substr(3);
  if (digits.size() != 2) return -1;
  if (!isdigit(static_cast<unsigned char>(digits[0])) ||
      !isdigit(static_cast<unsigned char>(digits[1])))
    return -1;
  const int lo = digits[0] - '0';
  const int hi = digits[1] - '0';
  return hi == lo + 1 ? lo : -1;
}

struct DefParser {
  Tokens tk;
  const TechLibrary& tech;
  Log& log;
  Design d;
  bool have_die = false;

  DefParser(const std::string& text, const TechLibrary& tech, Log& log)
      : tk(text, "def"), tech(tech), log(log) {
    d.tech = &tech;
  }

  Design run() {
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "VERSION" || kw == "DIVIDERCHAR" || kw == "BUSBITCHARS" || kw == "UNITS" ||
          kw == "TECHNOLOGY" || kw == "HISTORY") {
        tk.skip_statement();
      } else if (kw == "DESIGN") {
        d.name = tk.next();
        tk.expect(";");
      } else if (kw == "DIEAREA") {
        d.die.ll = parse_point();
        d.die.ur = parse_point();
        tk.expect(";");
        have_die = true;
      } else if (kw == "ROW") {
        parse_row();
      } else if (kw == "COMPONENTS") {
        parse_components();
      } else if (kw == "PINS") {
        parse_pins();
      } else if (kw == "NETS") {
        parse_nets();
      } else if (kw == "SPECIALNETS") {
        parse_specialnets();
      } else if (kw == "END") {
        const std::string what = tk.next();
        if (what == "DESIGN") break;
        tk.fail("unexpected END " + what);
      } else if (kw == "TRACKS" || kw == "GCELLGRID" || kw == "VIAS" || kw == "BLOCKAGES" ||
                 kw == "PROPERTYDEFINITIONS" || kw == "REGIONS" || kw == "GROUPS") {
        skip_section(kw);
      } else {
        log.warn("def: skipping unknown keyword '" + kw + "' near line " + std::to_string(tk.line()));
        tk.skip_statement();
      }
    }
    finish();
    return std::move(d);
  }

  Point parse_point() {
    tk.expect("(");
    Point p;
    p.x = tk.next_int();
    p.y = tk.next_int();
    tk.expect(")");
    return p;
  }

  void skip_section(const std::string& kw) {
    log.warn("def: skipping unsupported section " + kw);
    // Sections with a count end at "END <kw>"; plain statements end at ';'.
    int guard = 0;
    while (!tk.done()) {
      const std::string t = tk.next();
      if (t == "END" && tk.peek() == kw) {
        tk.next();
        return;
      }
      if (t == ";" && ++guard > 0 && (kw == "TRACKS" || kw == "GCELLGRID")) return;
    }
  }

  void parse_row() {
    Row row;
    row.name = tk.next();
    const std::string site_name = tk.next();
    auto it = tech.site_by_name.find(site_name);
    if (it == tech.site_by_name.end()) tk.fail("unknown site '" + site_name + "'");
    row.site = it->second;
    row.x = tk.next_int();
    row.y = tk.next_int();
    row.orient = parse_orient(tk.next(), tk);
    tk.expect("DO");
    row.count = static_cast<int>(tk.next_int());
    tk.expect("BY");
    tk.next_int();
    tk.expect("STEP");
    tk.next_int();
    tk.next_int();
    tk.expect(";");
    d.rows.push_back(std::move(row));
  }

  void parse_components() {
    tk.next_int();
    tk.expect(";");
    while (!tk.done()) {
      if (tk.accept("END")) {
        tk.expect("COMPONENTS");
        return;
      }
      tk.expect("-");
      const std::string name = tk.next();
      const std::string master_name = tk.next();
      const int master = tech.master_index(master_name);
      if (master < 0) throw Error(ErrorCode::UnknownMaster, master_name);
      Instance& inst = d.add_instance(name, master);
      while (!tk.accept(";")) {
        tk.expect("+");
        const std::string attr = tk.next();
        if (attr == "PLACED" || attr == "FIXED") {
          inst.status = attr == "PLACED" ? PlaceStatus::Placed : PlaceStatus::Fixed;
          inst.loc = parse_point();
          inst.orient = parse_orient(tk.next(), tk);
        } else if (attr == "UNPLACED") {
          inst.status = PlaceStatus::Unplaced;
        } else if (attr == "SOURCE") {
          inst.kind = source_kind(tk.next(), tk);
        } else {
          tk.fail("unknown component attribute '+ " + attr + "'");
        }
      }
    }
    tk.fail("unterminated COMPONENTS section");
  }

  void parse_pins() {
    tk.next_int();
    tk.expect(";");
    while (!tk.done()) {
      if (tk.accept("END")) {
        tk.expect("PINS");
        return;
      }
      tk.expect("-");
      const std::string name = tk.next();
      PortPin port;
      port.name = name;
      while (!tk.accept(";")) {
        tk.expect("+");
        const std::string attr = tk.next();
        if (attr == "NET") {
          tk.next();  // binding happens in the NETS section
        } else if (attr == "DIRECTION") {
          const std::string dir = tk.next();
          // DEF directions are chip-relative, same convention as ours.
          if (dir == "INPUT") port.dir = PinDir::Input;
          else if (dir == "OUTPUT") port.dir = PinDir::Output;
          else if (dir == "INOUT") port.dir = PinDir::Inout;
          else tk.fail("bad pin direction '" + dir + "'");
        } else if (attr == "USE") {
          tk.next();
        } else if (attr == "LAYER") {
          const std::string lname = tk.next();
          const Layer* l = tech.find_layer(lname);
          if (l == nullptr) tk.fail("unknown layer '" + lname + "'");
          port.layer = l->index;
          port.shape.ll = parse_point();
          port.shape.ur = parse_point();
        } else if (attr == "PLACED" || attr == "FIXED") {
          port.status = attr == "PLACED" ? PlaceStatus::Placed : PlaceStatus::Fixed;
          port.loc = parse_point();
          parse_orient(tk.next(), tk);
        } else {
          tk.fail("unknown pin attribute '+ " + attr + "'");
        }
      }
      PortPin& added = d.add_port(name, port.dir);
      const int id = added.id;
      port.id = id;
      port.net = -1;
      d.ports[id] = port;
    }
    tk.fail("unterminated PINS section");
  }

  void parse_nets() {
    tk.next_int();
    tk.expect(";");
    while (!tk.done()) {
      if (tk.accept("END")) {
        tk.expect("NETS");
        return;
      }
      tk.expect("-");
      const std::string name = tk.next();
      Net& net = d.add_net(name);
      const int net_id = net.id;
      while (tk.peek() == "(") {
        tk.expect("(");
        const std::string a = tk.next();
        const std::string b = tk.next();
        tk.expect(")");
        if (a == "PIN") {
          auto it = d.port_by_name.find(b);
          if (it == d.port_by_name.end()) tk.fail("net references unknown pin '" + b + "'");
          d.connect_port(it->second, net_id);
        } else {
          auto it = d.instance_by_name.find(a);
          if (it == d.instance_by_name.end()) tk.fail("net references unknown component '" + a + "'");
          const Instance& inst = d.instances[it->second];
          const int pin = d.master_of(inst).pin_index(b);
          if (pin < 0) throw Error(ErrorCode::UnknownPin, d.master_of(inst).name + "." + b);
          d.connect(inst.id, pin, net_id);
        }
      }
      while (!tk.accept(";")) {
        tk.expect("+");
        const std::string attr = tk.next();
        if (attr == "USE") {
          const std::string use = tk.next();
          Net& n = d.nets[net_id];
          if (use == "SIGNAL") n.use = PinUse::Signal;
          else if (use == "CLOCK") n.use = PinUse::Clock;
          else if (use == "POWER") n.use = PinUse::Power;
          else if (use == "GROUND") n.use = PinUse::Ground;
          else tk.fail("bad net use '" + use + "'");
        } else if (attr == "ROUTED") {
          parse_routed(net_id);
        } else {
          tk.fail("unknown net attribute '+ " + attr + "'");
        }
      }
    }
    tk.fail("unterminated NETS section");
  }

  // ROUTED layer ( x y ) [( x y ) | VIAxy]... { NEW layer ... }
  void parse_routed(int net_id) {
    for (;;) {
      const std::string lname = tk.next();
      const Layer* layer = tech.find_layer(lname);
      if (layer == nullptr) tk.fail("unknown layer '" + lname + "' in routing");
      Point prev = parse_point();
      bool have_prev = true;
      while (tk.peek() == "(" || parse_via_name(tk.peek()) > 0) {
        if (tk.peek() == "(") {
          const Point p = parse_point();
          d.nets[net_id].wires.push_back({layer->index, prev, p});
          prev = p;
        } else {
          const int lower = parse_via_name(tk.next());
          d.nets[net_id].vias.push_back({lower, prev});
        }
        (void)have_prev;
      }
      if (!tk.accept("NEW")) break;
    }
  }

  void parse_specialnets() {
    tk.next_int();
    tk.expect(";");
    while (!tk.done()) {
      if (tk.accept("END")) {
        tk.expect("SPECIALNETS");
        return;
      }
      tk.expect("-");
      const std::string name = tk.next();
      int net_id;
      auto it = d.net_by_name.find(name);
      if (it != d.net_by_name.end()) {
        net_id = it->second;
      } else {
        net_id = d.add_net(name, PinUse::Power).id;
      }
      while (!tk.accept(";")) {
        tk.expect("+");
        const std::string attr = tk.next();
        if (attr == "USE") {
          const std::string use = tk.next();
          Net& n = d.nets[net_id];
          if (use == "POWER") n.use = PinUse::Power;
          else if (use == "GROUND") n.use = PinUse::Ground;
          else tk.fail("special net use must be POWER or GROUND");
        } else if (attr == "ROUTED") {
          parse_special_routed(net_id);
        } else if (attr == "SHAPE") {
          tk.next();
        } else {
          tk.fail("unknown special net attribute '+ " + attr + "'");
        }
      }
    }
    tk.fail("unterminated SPECIALNETS section");
  }

  // ROUTED layer width [+ SHAPE kind] ( x y ) [( x y ) | VIAxy] { NEW ... }
  void parse_special_routed(int net_id) {
    for (;;) {
      const std::string lname = tk.next();
      const Layer* layer = tech.find_layer(lname);
      if (layer == nullptr) tk.fail("unknown layer '" + lname + "' in special routing");
      const Dbu width = tk.next_int();
      SpecialShapeKind kind = SpecialShapeKind::Stripe;
      if (tk.accept("+")) {
        tk.expect("SHAPE");
        const std::string s = tk.next();
        if (s == "FOLLOWPIN") kind = SpecialShapeKind::Followpin;
        else if (s == "STRIPE") kind = SpecialShapeKind::Stripe;
        else tk.fail("unknown special shape '" + s + "'");
      }
      Point prev = parse_point();
      while (tk.peek() == "(" || parse_via_name(tk.peek()) > 0) {
        if (tk.peek() == "(") {
          const Point p = parse_point();
          d.nets[net_id].special.push_back({layer->index, prev, p, width, kind});
          prev = p;
        } else {
          const int lower = parse_via_name(tk.next());
          d.nets[net_id].special_vias.push_back({lower, prev});
        }
      }
      if (!tk.accept("NEW")) break;
    }
  }

  void finish() {
    if (!have_die) tk.fail("missing DIEAREA");
    if (d.rows.empty()) {
      d.core = d.die;
    } else {
      Rect core = {{d.rows[0].x, d.rows[0].y}, {d.rows[0].x, d.rows[0].y}};
      for (const auto& row : d.rows) {
        const Site& site = tech.sites[row.site];
        const Rect r = {{row.x, row.y}, {row.x + site.width * row.count, row.y + site.height}};
        core = bounding_box(core, r);
      }
      d.core = core;
    }
  }
};

std::string orient_str(Orient o) { return o == Orient::N ? "N" : "FS"; }

}  // namespace

Design parse_def(const std::string& text, const TechLibrary& tech, Log& log) {
  DefParser parser(text, tech, log);
  return parser.run();
}

std::string write_def(const Design& d) {
  std::ostringstream out;
  const TechLibrary& tech = *d.tech;
  auto layer_name = [&](int index) -> const std::string& {
    return tech.layers[index - 1].name;
  };

  out << "VERSION 5.8 ;\n";
  out << "DESIGN " << d.name << " ;\n";
  out << "UNITS DISTANCE MICRONS " << tech.dbu_per_micron << " ;\n";
  out << "DIEAREA ( " << d.die.ll.x << " " << d.die.ll.y << " ) ( " << d.die.ur.x << " "
      << d.die.ur.y << " ) ;\n";

  for (const auto& row : d.rows) {
    const Site& site = tech.sites[row.site];
    out << "ROW " << row.name << " " << site.name << " " << row.x << " " << row.y << " "
        << orient_str(row.orient) << " DO " << row.count << " BY 1 STEP " << site.width
        << " 0 ;\n";
  }

  out << "COMPONENTS " << d.instances.size() << " ;\n";
  for (const auto& inst : d.instances) {
    out << "- " << inst.name << " " << tech.masters[inst.master].name << " + SOURCE "
        << source_name(inst.kind);
    if (inst.status == PlaceStatus::Unplaced) {
      out << " + UNPLACED";
    } else {
      out << (inst.status == PlaceStatus::Fixed ? " + FIXED ( " : " + PLACED ( ") << inst.loc.x
          << " " << inst.loc.y << " ) " << orient_str(inst.orient);
    }
    out << " ;\n";
  }
  out << "END COMPONENTS\n";

  out << "PINS " << d.ports.size() << " ;\n";
  for (const auto& port : d.ports) {
    out << "- " << port.name;
    if (port.net >= 0) out << " + NET " << d.nets[port.net].name;
    out << " + DIRECTION "
        << (port.dir == PinDir::Input ? "INPUT" : port.dir == PinDir::Output ? "OUTPUT" : "INOUT")
        << " + USE SIGNAL";
    if (!(port.shape == Rect{})) {
      out << " + LAYER " << layer_name(port.layer) << " ( " << port.shape.ll.x << " "
          << port.shape.ll.y << " ) ( " << port.shape.ur.x << " " << port.shape.ur.y << " )";
    }
    if (port.status != PlaceStatus::Unplaced) {
      out << (port.status == PlaceStatus::Fixed ? " + FIXED ( " : " + PLACED ( ") << port.loc.x
          << " " << port.loc.y << " ) N";
    }
    out << " ;\n";
  }
  out << "END PINS\n";

  std::size_t signal_nets = 0;
  for (const auto& net : d.nets)
    if (!net.is_pg()) ++signal_nets;
  out << "NETS " << signal_nets << " ;\n";
  for (const auto& net : d.nets) {
    if (net.is_pg()) continue;
    out << "- " << net.name;
    for (const auto& pin : net.pins) {
      if (pin.is_port())
        out << " ( PIN " << d.ports[pin.port].name << " )";
      else
        out << " ( " << d.instances[pin.inst].name << " "
            << tech.masters[d.instances[pin.inst].master].pins[pin.pin].name << " )";
    }
    out << " + USE " << (net.use == PinUse::Clock ? "CLOCK" : "SIGNAL");
    bool first = true;
    for (const auto& w : net.wires) {
      out << (first ? "\n  + ROUTED " : "\n    NEW ") << layer_name(w.layer) << " ( " << w.a.x
          << " " << w.a.y << " ) ( " << w.b.x << " " << w.b.y << " )";
      first = false;
    }
    for (const auto& v : net.vias) {
      out << (first ? "\n  + ROUTED " : "\n    NEW ") << layer_name(v.lower_layer) << " ( "
          << v.at.x << " " << v.at.y << " ) " << via_name(v.lower_layer);
      first = false;
    }
    out << " ;\n";
  }
  out << "END NETS\n";

  std::size_t pg_nets = 0;
  for (const auto& net : d.nets)
    if (net.is_pg()) ++pg_nets;
  if (pg_nets > 0) {
    out << "SPECIALNETS " << pg_nets << " ;\n";
    for (const auto& net : d.nets) {
      if (!net.is_pg()) continue;
      out << "- " << net.name << " + USE "
          << (net.use == PinUse::Power ? "POWER" : "GROUND");
      bool first = true;
      for (const auto& s : net.special) {
        out << (first ? "\n  + ROUTED " : "\n    NEW ") << layer_name(s.layer) << " " << s.width
            << " + SHAPE " << (s.shape == SpecialShapeKind::Followpin ? "FOLLOWPIN" : "STRIPE")
            << " ( " << s.a.x << " " << s.a.y << " ) ( " << s.b.x << " " << s.b.y << " )";
        first = false;
      }
      for (const auto& v : net.special_vias) {
        out << (first ? "\n  + ROUTED " : "\n    NEW ") << layer_name(v.lower_layer) << " 0 ( "
            << v.at.x << " " << v.at.y << " ) " << via_name(v.lower_layer);
        first = false;
      }
      out << " ;\n";
    }
    out << "END SPECIALNETS\n";
  }

  out << "END DESIGN\n";
  return out.str();
}

}  // namespace pdesk::io
