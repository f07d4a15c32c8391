#include "pdesk/io/io.hpp"

#include "tokens.hpp"

namespace pdesk::io {

namespace {

struct LefParser {
  Tokens tk;
  Log& log;
  TechLibrary tech;

  LefParser(const std::string& text, Log& log) : tk(text, "lef"), log(log) {}

  TechLibrary run() {
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "UNITS") {
        parse_units();
      } else if (kw == "LAYER") {
        parse_layer();
      } else if (kw == "SITE") {
        parse_site();
      } else if (kw == "MACRO") {
        parse_macro();
      } else if (kw == "VERSION" || kw == "BUSBITCHARS" || kw == "DIVIDERCHAR" ||
                 kw == "MANUFACTURINGGRID" || kw == "CLEARANCEMEASURE" || kw == "NAMESCASESENSITIVE") {
        tk.skip_statement();
      } else if (kw == "END") {
        const std::string what = tk.next();
        if (what == "LIBRARY") break;
        tk.fail("unexpected END " + what);
      } else {
        log.warn("lef: skipping unknown keyword '" + kw + "' near line " + std::to_string(tk.line()));
        tk.skip_statement();
      }
    }
    tech.rebuild_maps();
    validate_layers();
    return std::move(tech);
  }

  void parse_units() {
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") {
        tk.expect("UNITS");
        return;
      }
      if (kw == "DATABASE") {
        tk.expect("MICRONS");
        tech.dbu_per_micron = tk.next_int();
        tk.expect(";");
      } else {
        tk.skip_statement();
      }
    }
  }

  void parse_layer() {
    const std::string name = tk.next();
    Layer layer;
    layer.name = name;
    bool routing = false;
    double rpersq = 0.0, cpersq = 0.0;
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") {
        tk.expect(name);
        break;
      }
      if (kw == "TYPE") {
        routing = tk.next() == "ROUTING";
        tk.expect(";");
      } else if (kw == "DIRECTION") {
        const std::string dir = tk.next();
        if (dir == "HORIZONTAL") layer.dir = LayerDir::Horizontal;
        else if (dir == "VERTICAL") layer.dir = LayerDir::Vertical;
        else tk.fail("bad layer direction '" + dir + "'");
        tk.expect(";");
      } else if (kw == "PITCH") {
        layer.pitch = tk.next_dbu(tech.dbu_per_micron);
        tk.expect(";");
      } else if (kw == "WIDTH") {
        layer.width = tk.next_dbu(tech.dbu_per_micron);
        tk.expect(";");
      } else if (kw == "SPACING") {
        layer.spacing = tk.next_dbu(tech.dbu_per_micron);
        tk.expect(";");
      } else if (kw == "RESISTANCE") {
        tk.expect("RPERSQ");
        rpersq = tk.next_double();
        tk.expect(";");
      } else if (kw == "CAPACITANCE") {
        tk.expect("CPERSQDIST");
        cpersq = tk.next_double();
        tk.expect(";");
      } else {
        tk.skip_statement();
      }
    }
    if (!routing) {
      log.warn("lef: layer '" + name + "' is not ROUTING, skipped");
      return;
    }
    // RPERSQ (ohm/sq) over the default width -> ohm per DBU of wire.
    // CPERSQDIST (pF/um^2) times default width (um) -> pF/um = fF/DBU.
    const double width_um =
        static_cast<double>(layer.width) / static_cast<double>(tech.dbu_per_micron);
    const double width_dbu = static_cast<double>(layer.width);
    layer.res_per_dbu = width_dbu > 0 ? rpersq / width_dbu : 0.0;
    layer.cap_per_dbu = cpersq * width_um;
    layer.index = static_cast<int>(tech.layers.size()) + 1;
    tech.layers.push_back(layer);
  }

  void parse_site() {
    const std::string name = tk.next();
    Site site;
    site.name = name;
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") {
        tk.expect(name);
        break;
      }
      if (kw == "SIZE") {
        site.width = tk.next_dbu(tech.dbu_per_micron);
        tk.expect("BY");
        site.height = tk.next_dbu(tech.dbu_per_micron);
        tk.expect(";");
      } else {
        tk.skip_statement();
      }
    }
    tech.sites.push_back(site);
  }

  const Layer* layer_named(const std::string& lname) const {
    for (const auto& l : tech.layers)
      if (l.name == lname) return &l;
    return nullptr;
  }

  Rect parse_rect() {
    Rect r;
    r.ll.x = tk.next_dbu(tech.dbu_per_micron);
    r.ll.y = tk.next_dbu(tech.dbu_per_micron);
    r.ur.x = tk.next_dbu(tech.dbu_per_micron);
    r.ur.y = tk.next_dbu(tech.dbu_per_micron);
    tk.expect(";");
    if (!r.valid()) tk.fail("RECT lower-left exceeds upper-right");
    return r;
  }

  void parse_macro() {
    const std::string name = tk.next();
    CellMaster master;
    master.name = name;
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") {
        tk.expect(name);
        break;
      }
      if (kw == "CLASS") {
        const std::string cls = tk.next();
        if (cls == "CORE") {
          master.cls = MasterClass::Core;
          // CORE subtypes: SPACER marks fillers.
          if (tk.peek() != ";" && tk.next() == "SPACER") master.cls = MasterClass::Filler;
          while (tk.peek() != ";") tk.next();
          tk.expect(";");
        } else if (cls == "BLOCK") {
          master.cls = MasterClass::Block;
          tk.expect(";");
        } else if (cls == "PAD") {
          master.cls = MasterClass::Pad;
          while (tk.peek() != ";") tk.next();
          tk.expect(";");
        } else {
          tk.fail("unsupported MACRO CLASS '" + cls + "'");
        }
      } else if (kw == "SIZE") {
        master.width = tk.next_dbu(tech.dbu_per_micron);
        tk.expect("BY");
        master.height = tk.next_dbu(tech.dbu_per_micron);
        tk.expect(";");
      } else if (kw == "PIN") {
        parse_macro_pin(master);
      } else if (kw == "OBS") {
        parse_obs(master);
      } else if (kw == "ORIGIN" || kw == "SYMMETRY" || kw == "SITE" || kw == "FOREIGN") {
        tk.skip_statement();
      } else {
        log.warn("lef: macro " + name + ": skipping unknown keyword '" + kw + "'");
        tk.skip_statement();
      }
    }
    if (!tech.sites.empty() && master.cls == MasterClass::Core) {
      const Dbu rh = tech.sites[0].height;
      if (rh > 0 && master.height % rh != 0)
        tk.fail("macro " + name + " height is not a multiple of the site height");
    }
    tech.masters.push_back(std::move(master));
  }

  void parse_macro_pin(CellMaster& master) {
    const std::string name = tk.next();
    MasterPin pin;
    pin.name = name;
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") {
        tk.expect(name);
        break;
      }
      if (kw == "DIRECTION") {
        const std::string dir = tk.next();
        if (dir == "INPUT") pin.dir = PinDir::Input;
        else if (dir == "OUTPUT") pin.dir = PinDir::Output;
        else if (dir == "INOUT") pin.dir = PinDir::Inout;
        else tk.fail("bad pin direction '" + dir + "'");
        tk.expect(";");
      } else if (kw == "USE") {
        const std::string use = tk.next();
        if (use == "SIGNAL") pin.use = PinUse::Signal;
        else if (use == "CLOCK") pin.use = PinUse::Clock;
        else if (use == "POWER") pin.use = PinUse::Power;
        else if (use == "GROUND") pin.use = PinUse::Ground;
        else tk.fail("bad pin use '" + use + "'");
        tk.expect(";");
      } else if (kw == "PORT") {
        int layer = 1;
        while (!tk.done()) {
          const std::string pkw = tk.next();
          if (pkw == "END") break;
          if (pkw == "LAYER") {
            const std::string lname = tk.next();
            tk.expect(";");
            const Layer* l = layer_named(lname);
            if (l == nullptr) tk.fail("unknown layer '" + lname + "' in pin port");
            layer = l->index;
          } else if (pkw == "RECT") {
            PinShape shape;
            shape.layer = layer;
            shape.rect = parse_rect();
            pin.shapes.push_back(shape);
          } else {
            tk.skip_statement();
          }
        }
      } else {
        tk.skip_statement();
      }
    }
    for (const auto& s : pin.shapes) {
      const Rect bbox{{0, 0}, {master.width, master.height}};
      if (!bbox.contains(s.rect))
        tk.fail("pin " + master.name + "." + name + " geometry outside cell bounding box");
    }
    master.pins.push_back(std::move(pin));
  }

  void parse_obs(CellMaster& master) {
    int layer = 1;
    while (!tk.done()) {
      const std::string kw = tk.next();
      if (kw == "END") return;
      if (kw == "LAYER") {
        const std::string lname = tk.next();
        tk.expect(";");
        const Layer* l = layer_named(lname);
        if (l == nullptr) tk.fail("unknown layer '" + lname + "' in OBS");
        layer = l->index;
      } else if (kw == "RECT") {
        master.obstructions.push_back(parse_rect());
        master.obs_layers.push_back(layer);
      } else {
        tk.skip_statement();
      }
    }
  }

  void validate_layers() {
    for (const auto& l : tech.layers) {
      if (l.pitch < l.width + l.spacing)
        throw Error(ErrorCode::SyntaxError,
                    "lef: layer " + l.name + ": pitch < width + spacing");
    }
  }
};

}  // namespace

TechLibrary parse_tech_lef(const std::string& text, Log& log) {
  LefParser parser(text, log);
  return parser.run();
}

}  // namespace pdesk::io
