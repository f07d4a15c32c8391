#include <algorithm>
#include <cmath>
#include <map>

#include "pdesk/eval/metrics.hpp"
#include "pdesk/fp/floorplan.hpp"
#include "pdesk/place/placer.hpp"
#include "pdesk/route/route_grid.hpp"

namespace pdesk::place {

namespace {

// ---------------------------------------------------------------------------
// Abacus row legalization
// ---------------------------------------------------------------------------

struct Cluster {
  double q = 0.0;  // sum of (desired x - member prefix offset)
  Dbu width = 0;
  std::vector<int> cells;  // instance ids, left to right
  double x = 0.0;          // continuous optimal left edge

  void place(Dbu lo, Dbu hi) {
    x = std::clamp(q / static_cast<double>(cells.size()), static_cast<double>(lo),
                   static_cast<double>(hi - width));
  }
};

struct Segment {
  Dbu lo = 0;
  Dbu hi = 0;
  Dbu used = 0;
  std::vector<Cluster> clusters;
};

struct RowState {
  const Row* row = nullptr;
  Dbu y = 0;
  std::vector<Segment> segments;
};

// Appends cell to the segment, merging clusters while they overlap.
// Returns the final x of the appended cell.
double abacus_append(Segment& seg, const Design& d, int cell_id, double desired_x) {
  const Dbu w = d.master_of(d.instances[cell_id]).width;
  Cluster c;
  c.q = desired_x;
  c.width = w;
  c.cells = {cell_id};
  c.place(seg.lo, seg.hi);
  seg.clusters.push_back(std::move(c));

  while (seg.clusters.size() > 1) {
    Cluster& last = seg.clusters.back();
    Cluster& prev = seg.clusters[seg.clusters.size() - 2];
    if (prev.x + prev.width <= last.x) break;
    // merge last into prev; members of last shift by prev's width
    prev.q += last.q - static_cast<double>(last.cells.size()) * static_cast<double>(prev.width);
    prev.width += last.width;
    prev.cells.insert(prev.cells.end(), last.cells.begin(), last.cells.end());
    seg.clusters.pop_back();
    seg.clusters.back().place(seg.lo, seg.hi);
  }
  // x of the appended cell = cluster x + prefix widths before it
  const Cluster& tail = seg.clusters.back();
  Dbu prefix = 0;
  for (int id : tail.cells) {
    if (id == cell_id) break;
    prefix += d.master_of(d.instances[id]).width;
  }
  return tail.x + static_cast<double>(prefix);
}

std::vector<RowState> build_rows(const Design& d) {
  const Dbu halo = route::default_gcell_size(*d.tech);
  std::vector<Rect> blocked = fp::macro_halos(d, halo);
  for (const auto& inst : d.instances) {
    if (!inst.placed() || d.movable(inst)) continue;
    const CellMaster& m = d.master_of(inst);
    if (m.cls == MasterClass::Block) continue;  // halo covers it
    if (m.cls == MasterClass::Core || m.cls == MasterClass::Filler)
      blocked.push_back(d.instance_rect(inst));
  }

  std::vector<RowState> rows;
  const Dbu sw = d.site_width();
  for (const auto& row : d.rows) {
    RowState rs;
    rs.row = &row;
    rs.y = row.y;
    const Dbu rlo = row.x;
    const Dbu rhi = row.x + static_cast<Dbu>(row.count) * sw;
    const Dbu rtop = row.y + d.tech->sites[row.site].height;

    std::vector<std::pair<Dbu, Dbu>> cuts;
    for (const auto& blk : blocked) {
      if (blk.ll.y >= rtop || blk.ur.y <= row.y) continue;
      const Dbu a = std::max(blk.ll.x, rlo), b = std::min(blk.ur.x, rhi);
      if (a < b) cuts.push_back({a, b});
    }
    std::sort(cuts.begin(), cuts.end());
    Dbu at = rlo;
    auto push_seg = [&](Dbu lo, Dbu hi) {
      // shrink to the site grid
      Dbu slo = rlo + (lo - rlo + sw - 1) / sw * sw;
      Dbu shi = rlo + (hi - rlo) / sw * sw;
      if (slo < shi) rs.segments.push_back({slo, shi, 0, {}});
    };
    for (const auto& [a, b] : cuts) {
      if (a > at) push_seg(at, a);
      at = std::max(at, b);
    }
    if (at < rhi) push_seg(at, rhi);
    rows.push_back(std::move(rs));
  }
  return rows;
}

void snap_segment(Segment& seg, Design& d, Dbu row_x, Dbu row_y, Orient orient) {
  const Dbu sw = d.site_width();
  Dbu prev_end = seg.lo;
  std::vector<Dbu> xs(seg.clusters.size());
  for (std::size_t i = 0; i < seg.clusters.size(); ++i) {
    Cluster& c = seg.clusters[i];
    Dbu x = row_x + static_cast<Dbu>(std::llround((c.x - row_x) / static_cast<double>(sw))) * sw;
    x = std::max(x, prev_end);
    x = std::min(x, seg.hi - c.width);
    xs[i] = x;
    prev_end = x + c.width;
  }
  // resolve right-edge pile-ups by pushing earlier clusters left
  for (int i = static_cast<int>(seg.clusters.size()) - 2; i >= 0; --i) {
    if (xs[i] + seg.clusters[i].width > xs[i + 1])
      xs[i] = xs[i + 1] - seg.clusters[i].width;
  }
  for (std::size_t i = 0; i < seg.clusters.size(); ++i) {
    Dbu at = xs[i];
    for (int id : seg.clusters[i].cells) {
      Instance& inst = d.instances[id];
      inst.loc = {at, row_y};
      inst.orient = orient;
      inst.status = PlaceStatus::Placed;
      at += d.master_of(inst).width;
    }
  }
}

}  // namespace

void legalize(Design& d) {
  std::vector<int> cells;
  for (const auto& inst : d.instances) {
    if (!d.movable(inst)) continue;
    if (d.master_of(inst).height != d.row_height())
      throw Error(ErrorCode::PreconditionViolated,
                  "legalize: multi-row-height movable cell " + inst.name);
    cells.push_back(inst.id);
  }
  if (cells.empty()) return;

  std::sort(cells.begin(), cells.end(), [&](int a, int b) {
    if (d.instances[a].loc.x != d.instances[b].loc.x)
      return d.instances[a].loc.x < d.instances[b].loc.x;
    return a < b;
  });

  std::vector<RowState> rows = build_rows(d);
  if (rows.empty()) throw Error(ErrorCode::PreconditionViolated, "legalize: no rows");

  for (int id : cells) {
    const Instance& inst = d.instances[id];
    const Dbu w = d.master_of(inst).width;
    const double cx = static_cast<double>(inst.loc.x);
    const double cy = static_cast<double>(inst.loc.y);

    double best_cost = 1e300;
    int best_row = -1, best_seg = -1;

    // rows sorted by vertical distance; prune once dy^2 alone exceeds best
    std::vector<int> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = std::abs(static_cast<double>(rows[a].y) - cy);
      const double db = std::abs(static_cast<double>(rows[b].y) - cy);
      if (da != db) return da < db;
      return a < b;
    });

    for (int r : order) {
      const double dy = static_cast<double>(rows[r].y) - cy;
      if (dy * dy >= best_cost) break;
      for (std::size_t s = 0; s < rows[r].segments.size(); ++s) {
        Segment& seg = rows[r].segments[s];
        if (seg.used + w > seg.hi - seg.lo) continue;
        Segment trial = seg;  // small copies; rows hold few clusters
        const double x = abacus_append(trial, d, id, cx);
        const double dx = x - cx;
        const double cost = dx * dx + dy * dy;
        if (cost < best_cost) {
          best_cost = cost;
          best_row = r;
          best_seg = static_cast<int>(s);
        }
      }
    }
    if (best_row < 0) throw Error(ErrorCode::RowOverflow, "no row fits " + inst.name);
    Segment& seg = rows[best_row].segments[best_seg];
    abacus_append(seg, d, id, cx);
    seg.used += w;
  }

  for (auto& rs : rows)
    for (auto& seg : rs.segments) snap_segment(seg, d, rs.row->x, rs.y, rs.row->orient);
}

// ---------------------------------------------------------------------------
// Placement checker
// ---------------------------------------------------------------------------

std::vector<IntegrityViolation> check_placement(const Design& d) {
  std::vector<IntegrityViolation> out;

  for (const auto& inst : d.instances) {
    const CellMaster& m = d.master_of(inst);
    if (!inst.placed()) {
      if (m.cls == MasterClass::Core)
        out.push_back({ViolationKind::Unplaced, inst.id, -1, inst.name + " unplaced"});
      continue;
    }
    const Rect r = d.instance_rect(inst);
    if (!d.core.contains(r))
      out.push_back({ViolationKind::OutOfCore, inst.id, -1, inst.name + " outside core"});
    if (m.cls == MasterClass::Core || m.cls == MasterClass::Filler) {
      const Row* row = nullptr;
      for (const auto& candidate : d.rows)
        if (candidate.y == inst.loc.y) {
          row = &candidate;
          break;
        }
      if (row == nullptr) {
        out.push_back({ViolationKind::OffRow, inst.id, -1, inst.name + " not on a row"});
      } else if ((inst.loc.x - row->x) % d.tech->sites[row->site].width != 0) {
        out.push_back({ViolationKind::OffSite, inst.id, -1, inst.name + " off site grid"});
      }
    }
  }

  // overlap sweep over placed instances
  std::vector<int> ids;
  for (const auto& inst : d.instances)
    if (inst.placed()) ids.push_back(inst.id);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const Dbu xa = d.instances[a].loc.x, xb = d.instances[b].loc.x;
    if (xa != xb) return xa < xb;
    return a < b;
  });
  std::vector<int> active;
  std::vector<std::pair<int, int>> overlaps;
  for (int id : ids) {
    const Rect r = d.instance_rect(d.instances[id]);
    active.erase(std::remove_if(active.begin(), active.end(),
                                [&](int o) {
                                  return d.instance_rect(d.instances[o]).ur.x <= r.ll.x;
                                }),
                 active.end());
    for (int o : active) {
      if (d.instance_rect(d.instances[o]).overlaps(r))
        overlaps.push_back({std::min(o, id), std::max(o, id)});
    }
    active.push_back(id);
  }
  std::sort(overlaps.begin(), overlaps.end());
  overlaps.erase(std::unique(overlaps.begin(), overlaps.end()), overlaps.end());
  for (const auto& [a, b] : overlaps)
    out.push_back({ViolationKind::Overlap, a, b,
                   d.instances[a].name + " overlaps " + d.instances[b].name});
  return out;
}

// ---------------------------------------------------------------------------
// Detailed placement
// ---------------------------------------------------------------------------

namespace {

struct DetailRow {
  Dbu y = 0;
  Dbu lo = 0, hi = 0;
  std::vector<int> cells;  // ids ordered by x (movables and obstacles)
};

Dbu hpwl_of(const Design& d, const std::vector<int>& nets) {
  Dbu total = 0;
  for (int n : nets) total += eval::net_hpwl(d, d.nets[n]);
  return total;
}

std::vector<int> nets_of(const Design& d, int inst_id) {
  std::vector<int> out;
  for (int n : d.instances[inst_id].pin_nets)
    if (n >= 0) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> nets_of_pair(const Design& d, int a, int b) {
  std::vector<int> out = nets_of(d, a);
  for (int n : nets_of(d, b)) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void detailed_place(Design& d, const PlacerConfig& cfg) {
  // group placed cells by row
  std::map<Dbu, DetailRow> by_y;
  for (const auto& row : d.rows) {
    DetailRow& dr = by_y[row.y];
    dr.y = row.y;
    dr.lo = row.x;
    dr.hi = row.x + static_cast<Dbu>(row.count) * d.site_width();
  }
  for (const auto& inst : d.instances) {
    if (!inst.placed()) continue;
    const CellMaster& m = d.master_of(inst);
    if (m.cls != MasterClass::Core && m.cls != MasterClass::Filler) continue;
    auto it = by_y.find(inst.loc.y);
    if (it != by_y.end()) it->second.cells.push_back(inst.id);
  }
  std::vector<DetailRow> rows;
  for (auto& [y, dr] : by_y) {
    std::sort(dr.cells.begin(), dr.cells.end(), [&](int a, int b) {
      if (d.instances[a].loc.x != d.instances[b].loc.x)
        return d.instances[a].loc.x < d.instances[b].loc.x;
      return a < b;
    });
    rows.push_back(std::move(dr));
  }

  const Dbu sw = d.site_width();
  const int window = 4;  // neighbor distance for swaps

  for (int pass = 0; pass < cfg.detail_passes; ++pass) {
    bool improved = false;

    for (auto& row : rows) {
      auto movable_at = [&](std::size_t i) { return d.movable(d.instances[row.cells[i]]); };

      // (a) pairwise swaps within the window
      for (std::size_t i = 0; i < row.cells.size(); ++i) {
        if (!movable_at(i)) continue;
        for (std::size_t j = i + 1; j < row.cells.size() && j <= i + window; ++j) {
          if (!movable_at(j)) continue;
          const int a = row.cells[i], b = row.cells[j];
          Instance &ia = d.instances[a], &ib = d.instances[b];
          const Dbu wa = d.master_of(ia).width, wb = d.master_of(ib).width;
          if (wa != wb && j != i + 1) continue;  // unequal widths: adjacent only
          // adjacent unequal-width swap keeps the pair span; equal widths swap in place
          const Dbu xa = ia.loc.x, xb = ib.loc.x;
          Dbu na, nb;
          if (wa == wb) {
            na = xb;
            nb = xa;
          } else {
            nb = xa;
            na = xa + wb + (xb - (xa + wa));  // preserve the gap between them
            if (na + wa > (j + 1 < row.cells.size() ? d.instances[row.cells[j + 1]].loc.x
                                                    : row.hi))
              continue;
          }
          const auto nets = nets_of_pair(d, a, b);
          const Dbu before = hpwl_of(d, nets);
          ia.loc.x = na;
          ib.loc.x = nb;
          const Dbu after = hpwl_of(d, nets);
          if (after < before) {
            improved = true;
            std::swap(row.cells[i], row.cells[j]);
            std::sort(row.cells.begin(), row.cells.end(), [&](int p, int q) {
              if (d.instances[p].loc.x != d.instances[q].loc.x)
                return d.instances[p].loc.x < d.instances[q].loc.x;
              return p < q;
            });
          } else {
            ia.loc.x = xa;
            ib.loc.x = xb;
          }
        }
      }

      // (b) single-cell shifts into free gaps, window sites around the cell
      for (std::size_t i = 0; i < row.cells.size(); ++i) {
        if (!movable_at(i)) continue;
        const int id = row.cells[i];
        Instance& inst = d.instances[id];
        const Dbu w = d.master_of(inst).width;
        const Dbu gap_lo = i == 0 ? row.lo
                                  : d.instances[row.cells[i - 1]].loc.x +
                                        d.master_of(d.instances[row.cells[i - 1]]).width;
        const Dbu gap_hi = i + 1 < row.cells.size() ? d.instances[row.cells[i + 1]].loc.x : row.hi;
        if (gap_hi - gap_lo < w) continue;
        const auto nets = nets_of(d, id);
        const Dbu x0 = inst.loc.x;
        const Dbu before = hpwl_of(d, nets);
        Dbu best_x = x0;
        Dbu best = before;
        const Dbu lo = std::max(gap_lo, x0 - window * 4 * sw);
        const Dbu hi = std::min(gap_hi - w, x0 + window * 4 * sw);
        for (Dbu x = lo; x <= hi; x += sw) {
          inst.loc.x = x;
          const Dbu v = hpwl_of(d, nets);
          if (v < best) {
            best = v;
            best_x = x;
          }
        }
        inst.loc.x = best_x;
        if (best < before) improved = true;
      }

      // (c) exhaustive reorder of 3-cell windows, slots preserved
      if (row.cells.size() >= 3) {
        for (std::size_t i = 0; i + 2 < row.cells.size(); ++i) {
          std::array<int, 3> ids{row.cells[i], row.cells[i + 1], row.cells[i + 2]};
          if (!d.movable(d.instances[ids[0]]) || !d.movable(d.instances[ids[1]]) ||
              !d.movable(d.instances[ids[2]]))
            continue;
          std::array<Dbu, 3> xs{d.instances[ids[0]].loc.x, d.instances[ids[1]].loc.x,
                                d.instances[ids[2]].loc.x};
          std::array<Dbu, 3> ws{d.master_of(d.instances[ids[0]]).width,
                                d.master_of(d.instances[ids[1]]).width,
                                d.master_of(d.instances[ids[2]]).width};
          const Dbu gap1 = xs[1] - (xs[0] + ws[0]);
          const Dbu gap2 = xs[2] - (xs[1] + ws[1]);
          std::vector<int> all_nets;
          for (int id : ids)
            for (int n : nets_of(d, id)) all_nets.push_back(n);
          std::sort(all_nets.begin(), all_nets.end());
          all_nets.erase(std::unique(all_nets.begin(), all_nets.end()), all_nets.end());

          const Dbu before = hpwl_of(d, all_nets);
          std::array<int, 3> perm{0, 1, 2};
          std::array<int, 3> best_perm = perm;
          Dbu best = before;
          std::sort(perm.begin(), perm.end());
          do {
            Dbu at = xs[0];
            for (int k = 0; k < 3; ++k) {
              d.instances[ids[perm[k]]].loc.x = at;
              at += ws[perm[k]];
              if (k == 0) at += gap1;
              if (k == 1) at += gap2;
            }
            const Dbu v = hpwl_of(d, all_nets);
            if (v < best) {
              best = v;
              best_perm = perm;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));

          // apply the winner (identity when nothing improved)
          Dbu at = xs[0];
          for (int k = 0; k < 3; ++k) {
            d.instances[ids[best_perm[k]]].loc.x = at;
            at += ws[best_perm[k]];
            if (k == 0) at += gap1;
            if (k == 1) at += gap2;
          }
          if (best < before) {
            improved = true;
            row.cells[i] = ids[best_perm[0]];
            row.cells[i + 1] = ids[best_perm[1]];
            row.cells[i + 2] = ids[best_perm[2]];
          }
        }
      }
    }

    if (!improved) break;
  }
}

// ---------------------------------------------------------------------------
// Filler insertion
// ---------------------------------------------------------------------------

void insert_fillers(Design& d, const std::vector<std::string>& filler_masters, Log& log) {
  std::vector<int> fillers;
  for (const auto& name : filler_masters) {
    const int idx = d.tech->master_index(name);
    if (idx < 0) throw Error(ErrorCode::UnknownMaster, name);
    fillers.push_back(idx);
  }
  if (fillers.empty()) throw Error(ErrorCode::NoFillerMasters, d.name);
  std::sort(fillers.begin(), fillers.end(), [&](int a, int b) {
    if (d.tech->masters[a].width != d.tech->masters[b].width)
      return d.tech->masters[a].width > d.tech->masters[b].width;
    return a < b;
  });
  const Dbu smallest = d.tech->masters[fillers.back()].width;

  SiteMap map(d, /*include_halos=*/false);
  const Dbu sw = d.site_width();
  int counter = 0;
  int residuals = 0;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    const Row& row = d.rows[r];
    int s = 0;
    while (s < row.count) {
      if (!map.free_run(static_cast<int>(r), s, 1)) {
        ++s;
        continue;
      }
      int run = 0;
      while (s + run < row.count && map.free_run(static_cast<int>(r), s + run, 1)) ++run;
      Dbu gap = static_cast<Dbu>(run) * sw;
      int at = s;
      for (int f : fillers) {
        const Dbu w = d.tech->masters[f].width;
        while (gap >= w) {
          std::string name;
          do {
            name = "FILL_" + std::to_string(counter++);
          } while (d.instance_by_name.count(name));
          Instance& inst = d.add_instance(name, f, InstKind::Filler);
          inst.loc = map.location(static_cast<int>(r), at);
          inst.orient = row.orient;
          inst.status = PlaceStatus::Fixed;
          map.occupy(static_cast<int>(r), at, static_cast<int>(w / sw));
          at += static_cast<int>(w / sw);
          gap -= w;
        }
      }
      if (gap > 0 && gap < smallest) {
        ++residuals;
        log.warn("fillers: residual gap of " + std::to_string(gap) + " DBU in row " + row.name);
      }
      s += run;
    }
  }
  if (residuals > 0)
    log.warn("fillers: " + std::to_string(residuals) + " gaps below the smallest filler width");
}

// ---------------------------------------------------------------------------
// SiteMap
// ---------------------------------------------------------------------------

SiteMap::SiteMap(const Design& d, bool include_halos) : design_(&d) {
  used_.resize(d.rows.size());
  for (std::size_t r = 0; r < d.rows.size(); ++r)
    used_[r].assign(static_cast<std::size_t>(d.rows[r].count), false);

  const Dbu sw = d.site_width();
  auto block = [&](const Rect& rect) {
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      const Row& row = d.rows[r];
      const Dbu top = row.y + d.tech->sites[row.site].height;
      if (rect.ll.y >= top || rect.ur.y <= row.y) continue;
      const Dbu lo = std::max(rect.ll.x, row.x);
      const Dbu hi = std::min(rect.ur.x, row.x + static_cast<Dbu>(row.count) * sw);
      if (lo >= hi) continue;
      const int s0 = static_cast<int>((lo - row.x) / sw);
      const int s1 = static_cast<int>((hi - row.x + sw - 1) / sw);
      for (int s = s0; s < s1 && s < row.count; ++s) used_[r][s] = true;
    }
  };
  for (const auto& inst : d.instances)
    if (inst.placed()) block(d.instance_rect(inst));
  if (include_halos) {
    const Dbu halo = route::default_gcell_size(*d.tech);
    for (const auto& rect : fp::macro_halos(d, halo)) block(rect);
  }
}

bool SiteMap::free_run(int row, int site, int span) const {
  if (row < 0 || row >= static_cast<int>(used_.size())) return false;
  if (site < 0 || site + span > static_cast<int>(used_[row].size())) return false;
  for (int s = site; s < site + span; ++s)
    if (used_[row][s]) return false;
  return true;
}

void SiteMap::occupy(int row, int site, int span) {
  for (int s = site; s < site + span; ++s) used_[row][s] = true;
}

bool SiteMap::find_free_near(const Point& near, int span, int max_radius, int& row_out,
                             int& site_out) const {
  const Design& d = *design_;
  if (d.rows.empty()) return false;
  const Dbu sw = d.site_width();
  const Dbu rh = d.row_height();

  // seed row/site from the point
  int r0 = 0;
  for (std::size_t r = 0; r < d.rows.size(); ++r)
    if (std::abs(d.rows[r].y - near.y) < std::abs(d.rows[r0].y - near.y)) r0 = static_cast<int>(r);
  const int s0 =
      std::clamp<int>(static_cast<int>((near.x - d.rows[r0].x) / sw), 0, d.rows[r0].count - 1);

  for (int radius = 0; radius <= max_radius; ++radius) {
    // ring scan, deterministic: rows near to far, then sites near to far
    for (int dr = -radius; dr <= radius; ++dr) {
      const int r = r0 + dr;
      if (r < 0 || r >= static_cast<int>(d.rows.size())) continue;
      const int budget = radius - std::abs(dr) * static_cast<int>(rh / sw);
      if (budget < 0) continue;
      for (int ds = -budget; ds <= budget; ++ds) {
        if (std::abs(dr) * static_cast<int>(rh / sw) + std::abs(ds) != radius &&
            !(radius == 0 && ds == 0))
          continue;
        const int s = s0 + ds;
        if (free_run(r, s, span)) {
          row_out = r;
          site_out = s;
          return true;
        }
      }
    }
  }
  return false;
}

Point SiteMap::location(int row, int site) const {
  const Row& r = design_->rows[row];
  return {r.x + static_cast<Dbu>(site) * design_->site_width(), r.y};
}

}  // namespace pdesk::place
