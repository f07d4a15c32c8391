#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdesk/db.hpp"
#include "pdesk/design.hpp"

namespace pdesk::place {

struct PlacerConfig {
  double target_density = 0.8;  // (0, 1]
  int max_iterations = 30;      // global place outer loop
  double cg_tolerance = 1e-6;   // relative residual
  int cg_max_iters = 300;
  int detail_passes = 5;
  double anchor_alpha = 1e-4;   // anchor weight ramp per spreading iteration
  Dbu bin_size = 0;             // 0 = 4 row heights
  std::uint64_t seed = 1;
};

// Quadratic wirelength (Bound2Bound, re-linearized each outer iteration)
// solved by preconditioned CG, alternated with BFS bin spreading until the
// max bin density meets the target or the iteration cap. Cells end up
// placed, possibly off-site.
void global_place(Design& design, const PlacerConfig& cfg);

// Abacus-style row legalization: nearest feasible row, site-aligned, zero
// overlaps, squared-displacement-minimal per row cluster. Macros untouched.
void legalize(Design& design);

// Greedy improvement passes: same-row swaps, single-cell shifts to free
// sites, and 3-cell window reordering; only HPWL-decreasing moves commit.
void detailed_place(Design& design, const PlacerConfig& cfg);

// Tiles every row gap with the widest fitting fillers. Remaining slivers
// narrower than the smallest filler are warned.
void insert_fillers(Design& design, const std::vector<std::string>& filler_masters, Log& log);

// Overlaps (ordered id pairs), off-site/off-row cells, out-of-core cells,
// unplaced movables.
std::vector<IntegrityViolation> check_placement(const Design& design);

// Site-granular occupancy over rows; shared by filler insertion and by the
// buffer legalization in cts/opt.
class SiteMap {
 public:
  // Macro halos count as occupied by default; filler insertion turns that
  // off since fillers are inert.
  explicit SiteMap(const Design& design, bool include_halos = true);

  bool free_run(int row, int site, int span) const;
  void occupy(int row, int site, int span);
  // Nearest free run of `span` sites to `near`, searched in expanding rings
  // up to max_radius (sites). Deterministic scan order. Returns false when
  // nothing is free within the radius.
  bool find_free_near(const Point& near, int span, int max_radius, int& row_out,
                      int& site_out) const;
  Point location(int row, int site) const;
  const Design& design() const { return *design_; }

 private:
  const Design* design_;
  std::vector<std::vector<bool>> used_;  // [row][site]
};

}  // namespace pdesk::place
