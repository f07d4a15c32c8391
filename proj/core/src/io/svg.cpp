#include <fstream>
#include <sstream>

#include "pdesk/eval/metrics.hpp"
#include "pdesk/io/io.hpp"
#include "pdesk/util.hpp"

namespace pdesk::io {

namespace {

const char* kLayerColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                              "#ff7f0e", "#8c564b", "#17becf", "#bcbd22"};

const char* class_color(MasterClass cls, InstKind kind) {
  if (kind == InstKind::CtsBuffer) return "#e8b339";
  if (kind == InstKind::OptBuffer) return "#d98fc9";
  switch (cls) {
    case MasterClass::Core: return "#9ec9e8";
    case MasterClass::Block: return "#8d8d94";
    case MasterClass::Pad: return "#c7b299";
    case MasterClass::Filler: return "#e3e8ec";
  }
  return "#cccccc";
}

}  // namespace

std::string render_layout_svg(const Design& d, const SvgOptions& opt) {
  std::ostringstream svg;
  const Dbu w = std::max<Dbu>(1, d.die.width());
  const Dbu h = std::max<Dbu>(1, d.die.height());
  // DEF origin is lower-left; SVG y grows downward, so flip.
  auto fy = [&](Dbu y, Dbu height = 0) { return d.die.ur.y - y - height; };
  auto fx = [&](Dbu x) { return x - d.die.ll.x; };

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(w * opt.scale, 1)
      << "\" height=\"" << fmt_double(h * opt.scale, 1) << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" << w / 200 << "\"/>\n";

  if (opt.rows) {
    for (const auto& row : d.rows) {
      const Site& site = d.tech->sites[row.site];
      svg << "<rect x=\"" << fx(row.x) << "\" y=\"" << fy(row.y, site.height) << "\" width=\""
          << site.width * row.count << "\" height=\"" << site.height
          << "\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"" << std::max<Dbu>(1, w / 2000)
          << "\"/>\n";
    }
  }

  for (const auto& inst : d.instances) {
    if (!inst.placed()) continue;
    const Rect r = d.instance_rect(inst);
    svg << "<rect x=\"" << fx(r.ll.x) << "\" y=\"" << fy(r.ll.y, r.height()) << "\" width=\""
        << r.width() << "\" height=\"" << r.height() << "\" fill=\""
        << class_color(d.master_of(inst).cls, inst.kind)
        << "\" stroke=\"#5a5a5a\" stroke-width=\"" << std::max<Dbu>(1, w / 4000) << "\"/>\n";
  }

  for (const auto& port : d.ports) {
    if (port.status == PlaceStatus::Unplaced) continue;
    const Dbu s = std::max<Dbu>(w / 150, 60);
    svg << "<rect x=\"" << fx(port.loc.x) - s / 2 << "\" y=\"" << fy(port.loc.y, 0) - s / 2
        << "\" width=\"" << s << "\" height=\"" << s << "\" fill=\"#c23b22\"/>\n";
  }

  if (opt.flylines) {
    for (const auto& net : d.nets) {
      if (net.is_pg() || net.pins.size() < 2) continue;
      // star from the first pin
      const Point c = d.pin_location(net.pins[0]);
      for (std::size_t i = 1; i < net.pins.size(); ++i) {
        const Point p = d.pin_location(net.pins[i]);
        svg << "<line x1=\"" << fx(c.x) << "\" y1=\"" << fy(c.y) << "\" x2=\"" << fx(p.x)
            << "\" y2=\"" << fy(p.y) << "\" stroke=\"#b0b0b0\" stroke-width=\""
            << std::max<Dbu>(1, w / 4000) << "\" opacity=\"0.5\"/>\n";
      }
    }
  }

  if (opt.wires) {
    for (const auto& net : d.nets) {
      for (const auto& seg : net.special) {
        const Rect r = seg.rect();
        svg << "<rect x=\"" << fx(r.ll.x) << "\" y=\"" << fy(r.ll.y, r.height()) << "\" width=\""
            << r.width() << "\" height=\"" << r.height() << "\" fill=\""
            << kLayerColors[(seg.layer - 1) % 8] << "\" opacity=\"0.35\"/>\n";
      }
      for (const auto& wire : net.wires) {
        svg << "<line x1=\"" << fx(wire.a.x) << "\" y1=\"" << fy(wire.a.y) << "\" x2=\""
            << fx(wire.b.x) << "\" y2=\"" << fy(wire.b.y) << "\" stroke=\""
            << kLayerColors[(wire.layer - 1) % 8] << "\" stroke-width=\""
            << std::max<Dbu>(1, w / 1200) << "\" opacity=\"0.8\"/>\n";
      }
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
}

}  // namespace pdesk::io
