#pragma once

#include <string>
#include <vector>

#include "pdesk/design.hpp"
#include "pdesk/diag.hpp"

namespace pdesk::fp {

struct FloorplanSpec {
  double utilization = 0.5;  // (0, 1)
  double aspect = 1.0;       // core height / width
  Dbu margin = 4800;         // core-to-die margin per side
  std::vector<std::string> io_order;
};

struct PdnSpec {
  int stripe_layer_v = 4;  // >= metal2
  int stripe_layer_h = 5;
  Dbu stripe_width = 960;
  Dbu stripe_pitch = 24000;
  Dbu rail_width = 240;  // followpin rails on metal1
};

// Sizes the core from total placeable area / utilization, snaps to the
// site/row grid, fills it with alternating-orientation rows and sets the die
// to core + margins. Pre-existing fixed placements are left untouched.
void init_floorplan(Design& design, const FloorplanSpec& spec);

// Ports distributed uniformly clockwise along the die boundary starting at
// the lower-left corner, on routing-track crossings, fixed. Top/bottom edges
// use the lowest vertical layer, left/right the next horizontal one.
void place_io_pins(Design& design, const std::vector<std::string>& order);

// Block-class instances packed flush against the core edge with the highest
// connectivity to already-placed IO, ordered by (io connectivity, area)
// descending. Fixed afterwards.
void place_macros(Design& design);

// Followpin rails along every row boundary plus vertical/horizontal stripe
// pairs at the spec pitch, with via stacks at same-net crossings.
void gen_pdn(Design& design, const PdnSpec& spec);

// Macro keep-out rings (1 GCell by default); derived, not stored.
std::vector<Rect> macro_halos(const Design& design, Dbu halo);

}  // namespace pdesk::fp
