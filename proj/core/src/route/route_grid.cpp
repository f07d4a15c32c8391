#include "pdesk/route/route_grid.hpp"

#include <algorithm>

namespace pdesk::route {

int RouteGrid::gx(Dbu x) const {
  return std::clamp<int>(static_cast<int>((x - extent.ll.x) / gcell), 0, nx - 1);
}

int RouteGrid::gy(Dbu y) const {
  return std::clamp<int>(static_cast<int>((y - extent.ll.y) / gcell), 0, ny - 1);
}

Point RouteGrid::cell_center(int x, int y) const {
  return {extent.ll.x + x * gcell + gcell / 2, extent.ll.y + y * gcell + gcell / 2};
}

Rect RouteGrid::cell_rect(int x, int y) const {
  return {{extent.ll.x + x * gcell, extent.ll.y + y * gcell},
          {std::min(extent.ll.x + (x + 1) * gcell, extent.ur.x),
           std::min(extent.ll.y + (y + 1) * gcell, extent.ur.y)}};
}

long long RouteGrid::total_overflow() const {
  long long total = 0;
  for (std::size_t e = 0; e < dem_h.size(); ++e) total += overflow_h(e);
  for (std::size_t e = 0; e < dem_v.size(); ++e) total += overflow_v(e);
  return total;
}

Dbu default_gcell_size(const TechLibrary& tech) {
  const Layer& ref = tech.layers.size() > 1 ? tech.layers[1] : tech.layers.at(0);
  return 15 * ref.pitch;
}

namespace {

// Obstruction rectangles per layer: macro OBS (orientation applied) and PDN
// special shapes.
std::vector<std::vector<Rect>> blockage_rects(const Design& d) {
  std::vector<std::vector<Rect>> per_layer(d.tech->layers.size() + 1);
  for (const auto& inst : d.instances) {
    if (!inst.placed()) continue;
    const CellMaster& m = d.master_of(inst);
    for (std::size_t i = 0; i < m.obstructions.size(); ++i) {
      Rect r = m.obstructions[i];
      if (inst.orient == Orient::FS) {
        const Dbu y0 = m.height - r.ur.y, y1 = m.height - r.ll.y;
        r.ll.y = y0;
        r.ur.y = y1;
      }
      r.ll.x += inst.loc.x;
      r.ur.x += inst.loc.x;
      r.ll.y += inst.loc.y;
      r.ur.y += inst.loc.y;
      const int layer = m.obs_layers[i];
      if (layer >= 1 && layer < static_cast<int>(per_layer.size()))
        per_layer[layer].push_back(r);
    }
  }
  for (const auto& net : d.nets) {
    for (const auto& seg : net.special) {
      if (seg.layer >= 1 && seg.layer < static_cast<int>(per_layer.size()))
        per_layer[seg.layer].push_back(seg.rect());
    }
  }
  return per_layer;
}

}  // namespace

RouteGrid build_route_grid(const Design& d, Dbu gcell_size) {
  RouteGrid g;
  g.gcell = std::max<Dbu>(1, gcell_size);
  g.extent = d.die;
  g.nx = std::max<int>(1, static_cast<int>((d.die.width() + g.gcell - 1) / g.gcell));
  g.ny = std::max<int>(1, static_cast<int>((d.die.height() + g.gcell - 1) / g.gcell));

  const auto blockers = blockage_rects(d);
  g.layers.resize(d.tech->layers.size());
  g.cap_h.assign(g.num_h_edges(), 0);
  g.cap_v.assign(g.num_v_edges(), 0);
  g.dem_h.assign(g.num_h_edges(), 0);
  g.dem_v.assign(g.num_v_edges(), 0);
  g.hist_h.assign(g.num_h_edges(), 0.0);
  g.hist_v.assign(g.num_v_edges(), 0.0);

  for (std::size_t li = 0; li < d.tech->layers.size(); ++li) {
    const Layer& layer = d.tech->layers[li];
    LayerEdges& edges = g.layers[li];
    edges.dir = layer.dir;
    const auto& blocks = blockers[layer.index];

    if (layer.dir == LayerDir::Horizontal) {
      edges.capacity.assign(g.num_h_edges(), 0);
      edges.demand.assign(g.num_h_edges(), 0);
      for (int y = 0; y < g.ny; ++y) {
        const Dbu y0 = g.extent.ll.y + y * g.gcell;
        const Dbu y1 = std::min(y0 + g.gcell, g.extent.ur.y);
        const auto tracks = d.tech->tracks_in(layer, y0, y1 - 1);
        for (int x = 0; x + 1 < g.nx; ++x) {
          const Dbu bx = g.extent.ll.x + (x + 1) * g.gcell;  // boundary line
          int free = 0;
          for (const Dbu t : tracks) {
            bool blocked = false;
            for (const auto& r : blocks) {
              if (r.ll.x < bx && r.ur.x > bx && r.ll.y <= t && r.ur.y >= t) {
                blocked = true;
                break;
              }
            }
            if (!blocked) ++free;
          }
          const std::size_t e = g.h_edge(x, y);
          edges.capacity[e] = free;
          g.cap_h[e] += free;
        }
      }
    } else {
      edges.capacity.assign(g.num_v_edges(), 0);
      edges.demand.assign(g.num_v_edges(), 0);
      for (int x = 0; x < g.nx; ++x) {
        const Dbu x0 = g.extent.ll.x + x * g.gcell;
        const Dbu x1 = std::min(x0 + g.gcell, g.extent.ur.x);
        const auto tracks = d.tech->tracks_in(layer, x0, x1 - 1);
        for (int y = 0; y + 1 < g.ny; ++y) {
          const Dbu by = g.extent.ll.y + (y + 1) * g.gcell;
          int free = 0;
          for (const Dbu t : tracks) {
            bool blocked = false;
            for (const auto& r : blocks) {
              if (r.ll.y < by && r.ur.y > by && r.ll.x <= t && r.ur.x >= t) {
                blocked = true;
                break;
              }
            }
            if (!blocked) ++free;
          }
          const std::size_t e = g.v_edge(x, y);
          edges.capacity[e] = free;
          g.cap_v[e] += free;
        }
      }
    }
  }
  return g;
}

}  // namespace pdesk::route
