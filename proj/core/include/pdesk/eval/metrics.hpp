#pragma once

#include <vector>

#include "pdesk/design.hpp"
#include "pdesk/diag.hpp"

namespace pdesk::route {
struct RouteGrid;
}

namespace pdesk::eval {

// Scalar grid over the core (density) or the GCell grid (congestion).
// The last bin row/column may be partial.
struct BinGrid {
  Dbu bin_size = 0;
  int nx = 0;
  int ny = 0;
  Rect extent;
  std::vector<double> values;  // row-major [y][x]

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * nx + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * nx + x]; }
  double max_value() const;
  Rect bin_rect(int x, int y) const;  // clipped to extent
};

// Half-perimeter of the pin bounding box; pins of unplaced instances are
// excluded (warned once per net). Nets with < 2 located pins contribute 0.
Dbu net_hpwl(const Design& design, const Net& net, Log* log = nullptr);
Dbu total_hpwl(const Design& design, Log* log = nullptr);

// Per-bin (instance area overlap) / (bin area), fixed macros included.
BinGrid density_map(const Design& design, Dbu bin_size);

// Per-GCell max over layers and incident edges of demand/capacity.
BinGrid congestion_map(const route::RouteGrid& grid);

// Default evaluation bin: 4 row heights, square.
Dbu default_bin_size(const Design& design);

}  // namespace pdesk::eval
