#pragma once

#include <vector>

#include "pdesk/design.hpp"

namespace pdesk::route {

// 3D GCell grid. Edges exist along each layer's preferred direction:
// horizontal layers own edges between x-adjacent cells, vertical layers
// between y-adjacent cells. The 2D (planar) arrays aggregate capacity over
// layers of the same direction and carry PathFinder demand/history.
struct RouteGrid {
  Dbu gcell = 0;
  int nx = 0;
  int ny = 0;
  Rect extent;  // the die

  struct LayerEdges {
    LayerDir dir = LayerDir::Horizontal;
    std::vector<int> capacity;
    std::vector<int> demand;
  };
  std::vector<LayerEdges> layers;  // index = layer index - 1

  std::vector<int> cap_h, cap_v;      // 2D aggregate capacity
  std::vector<int> dem_h, dem_v;      // 2D demand (planar routing)
  std::vector<double> hist_h, hist_v; // negotiation history cost

  // Edge between (x,y) and (x+1,y); x in [0,nx-2], y in [0,ny-1].
  std::size_t h_edge(int x, int y) const { return static_cast<std::size_t>(y) * (nx - 1) + x; }
  // Edge between (x,y) and (x,y+1); x in [0,nx-1], y in [0,ny-2].
  std::size_t v_edge(int x, int y) const { return static_cast<std::size_t>(y) * nx + x; }
  std::size_t num_h_edges() const { return nx > 1 ? static_cast<std::size_t>(nx - 1) * ny : 0; }
  std::size_t num_v_edges() const { return ny > 1 ? static_cast<std::size_t>(ny - 1) * nx : 0; }

  int gx(Dbu x) const;
  int gy(Dbu y) const;
  Point cell_center(int x, int y) const;
  Rect cell_rect(int x, int y) const;

  int overflow_h(std::size_t e) const { return std::max(0, dem_h[e] - cap_h[e]); }
  int overflow_v(std::size_t e) const { return std::max(0, dem_v[e] - cap_v[e]); }
  long long total_overflow() const;
};

// Capacity per edge = tracks crossing the GCell boundary on that layer,
// minus PDN and macro-obstruction deductions.
RouteGrid build_route_grid(const Design& design, Dbu gcell_size);

// Default GCell edge: 15 tracks of the second routing layer.
Dbu default_gcell_size(const TechLibrary& tech);

}  // namespace pdesk::route
