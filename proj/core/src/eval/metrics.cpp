#include "pdesk/eval/metrics.hpp"

#include <algorithm>

#include "pdesk/route/route_grid.hpp"
#include "pdesk/util.hpp"

namespace pdesk::eval {

double BinGrid::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

Rect BinGrid::bin_rect(int x, int y) const {
  Rect r{{extent.ll.x + x * bin_size, extent.ll.y + y * bin_size},
         {extent.ll.x + (x + 1) * bin_size, extent.ll.y + (y + 1) * bin_size}};
  r.ur.x = std::min(r.ur.x, extent.ur.x);
  r.ur.y = std::min(r.ur.y, extent.ur.y);
  return r;
}

Dbu net_hpwl(const Design& design, const Net& net, Log* log) {
  Dbu min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& pin : net.pins) {
    if (!pin.is_port() && !design.instances[pin.inst].placed()) {
      if (log != nullptr)
        log->warn("hpwl: net " + net.name + ": pin on unplaced instance " +
                  design.instances[pin.inst].name + " excluded");
      continue;
    }
    const Point p = design.pin_location(pin);
    if (first) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      first = false;
    } else {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  if (first) return 0;
  return (max_x - min_x) + (max_y - min_y);
}

Dbu total_hpwl(const Design& design, Log* log) {
  std::vector<Dbu> per_net(design.nets.size(), 0);
  parallel_for(design.nets.size(), [&](std::size_t i) {
    const Net& net = design.nets[i];
    if (net.is_pg() || net.pins.size() < 2) return;
    per_net[i] = net_hpwl(design, net, nullptr);
  });
  Dbu total = 0;
  for (std::size_t i = 0; i < per_net.size(); ++i) total += per_net[i];
  if (log != nullptr) {
    for (const auto& net : design.nets) {
      if (net.is_pg() || net.pins.size() < 2) continue;
      for (const auto& pin : net.pins)
        if (!pin.is_port() && !design.instances[pin.inst].placed()) {
          log->warn("hpwl: net " + net.name + " has unplaced pins");
          break;
        }
    }
  }
  return total;
}

BinGrid density_map(const Design& design, Dbu bin_size) {
  BinGrid grid;
  grid.bin_size = std::max<Dbu>(1, bin_size);
  grid.extent = design.core;
  const Dbu w = design.core.width(), h = design.core.height();
  grid.nx = std::max<int>(1, static_cast<int>((w + grid.bin_size - 1) / grid.bin_size));
  grid.ny = std::max<int>(1, static_cast<int>((h + grid.bin_size - 1) / grid.bin_size));
  grid.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);

  for (const auto& inst : design.instances) {
    if (!inst.placed()) continue;
    const Rect r = design.instance_rect(inst);
    const Rect clipped = r.intersection(design.core);
    if (clipped.empty()) continue;
    const int x0 = std::clamp<int>(static_cast<int>((clipped.ll.x - grid.extent.ll.x) / grid.bin_size), 0, grid.nx - 1);
    const int x1 = std::clamp<int>(static_cast<int>((clipped.ur.x - 1 - grid.extent.ll.x) / grid.bin_size), 0, grid.nx - 1);
    const int y0 = std::clamp<int>(static_cast<int>((clipped.ll.y - grid.extent.ll.y) / grid.bin_size), 0, grid.ny - 1);
    const int y1 = std::clamp<int>(static_cast<int>((clipped.ur.y - 1 - grid.extent.ll.y) / grid.bin_size), 0, grid.ny - 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Rect bin = grid.bin_rect(x, y);
        const Rect ov = clipped.intersection(bin);
        if (ov.empty()) continue;
        grid.at(x, y) += static_cast<double>(ov.area()) / static_cast<double>(bin.area());
      }
    }
  }
  return grid;
}

BinGrid congestion_map(const route::RouteGrid& rg) {
  BinGrid grid;
  grid.bin_size = rg.gcell;
  grid.extent = rg.extent;
  grid.nx = rg.nx;
  grid.ny = rg.ny;
  grid.values.assign(static_cast<std::size_t>(rg.nx) * rg.ny, 0.0);

  auto ratio = [](int demand, int capacity) {
    if (capacity > 0) return static_cast<double>(demand) / capacity;
    return demand > 0 ? 1e9 : 0.0;
  };

  for (int y = 0; y < rg.ny; ++y) {
    for (int x = 0; x < rg.nx; ++x) {
      double m = 0.0;
      if (x > 0) m = std::max(m, ratio(rg.dem_h[rg.h_edge(x - 1, y)], rg.cap_h[rg.h_edge(x - 1, y)]));
      if (x + 1 < rg.nx) m = std::max(m, ratio(rg.dem_h[rg.h_edge(x, y)], rg.cap_h[rg.h_edge(x, y)]));
      if (y > 0) m = std::max(m, ratio(rg.dem_v[rg.v_edge(x, y - 1)], rg.cap_v[rg.v_edge(x, y - 1)]));
      if (y + 1 < rg.ny) m = std::max(m, ratio(rg.dem_v[rg.v_edge(x, y)], rg.cap_v[rg.v_edge(x, y)]));
      grid.at(x, y) = m;
    }
  }
  return grid;
}

Dbu default_bin_size(const Design& design) { return design.row_height() * 4; }

}  // namespace pdesk::eval
