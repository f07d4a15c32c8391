#include "doctest.h"

#include "pdesk/db.hpp"
#include "pdesk/eval/metrics.hpp"
#include "pdesk/io/io.hpp"
#include "pdesk/util.hpp"

#include "../support/fixtures.hpp"
#include "../support/random_design.hpp"

using namespace pdesk;
using testsupport::toy_tech;

namespace {

// Linear-scan oracle for query_region.
std::vector<int> scan_region(const Design& d, const Rect& window) {
  std::vector<int> out;
  for (const auto& inst : d.instances)
    if (inst.placed() && d.instance_rect(inst).intersects(window)) out.push_back(inst.id);
  return out;
}

NetlistAST inverter_netlist() {
  NetlistAST ast;
  ast.module_name = "mini";
  ast.ports = {{"in", PinDir::Input}, {"out", PinDir::Output}};
  ast.instances.push_back({"INVX1", "u1", {{"A", "in"}, {"Y", "out"}}});
  return ast;
}

}  // namespace

TEST_CASE("build_design: minimal linkage") {
  Log log;
  Design d = build_design(toy_tech(), inverter_netlist(), log);
  CHECK(d.instances.size() == 1);
  // nets: in, out (+ VDD/VSS special)
  std::size_t signal = 0;
  for (const auto& n : d.nets)
    if (!n.is_pg()) ++signal;
  CHECK(signal == 2);
  CHECK(d.find_net("in")->pins.size() == 2);   // port + u1.A
  CHECK(d.find_net("out")->pins.size() == 2);  // port + u1.Y
}

TEST_CASE("build_design: unknown master is named") {
  NetlistAST ast;
  ast.module_name = "bad";
  ast.ports = {{"x", PinDir::Input}};
  ast.instances.push_back({"NAND9X", "u1", {{"A", "x"}}});
  Log log;
  try {
    build_design(toy_tech(), ast, log);
    FAIL("expected UnknownMaster");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownMaster);
    CHECK(std::string(e.what()).find("NAND9X") != std::string::npos);
  }
}

TEST_CASE("build_design: deterministic ids") {
  Log log1, log2;
  Design a = testsupport::load_design("c300", log1);
  Design b = testsupport::load_design("c300", log2);
  std::string why;
  CHECK_MESSAGE(deep_equal(a, b, &why), why);
}

TEST_CASE("query_region: die window returns all placed instances") {
  Design d = testsupport::random_design(toy_tech(), 3);
  auto all = query_region(d, d.die);
  auto oracle = scan_region(d, d.die);
  CHECK(all == oracle);
  std::size_t placed = 0;
  for (const auto& i : d.instances)
    if (i.placed()) ++placed;
  CHECK(all.size() == placed);
}

TEST_CASE("query_region: disjoint window is empty") {
  Design d = testsupport::random_design(toy_tech(), 4);
  const Rect far{{d.die.ur.x + 1000, d.die.ur.y + 1000}, {d.die.ur.x + 2000, d.die.ur.y + 2000}};
  CHECK(query_region(d, far).empty());
}

TEST_CASE("query_region: random windows match the scan oracle") {
  SplitMix64 rng(99);
  Design d = testsupport::random_design(toy_tech(), 5);
  for (int t = 0; t < 50; ++t) {
    Point a{rng.range(0, d.die.ur.x), rng.range(0, d.die.ur.y)};
    Point b{rng.range(0, d.die.ur.x), rng.range(0, d.die.ur.y)};
    Rect w{{std::min(a.x, b.x), std::min(a.y, b.y)}, {std::max(a.x, b.x), std::max(a.y, b.y)}};
    CHECK(query_region(d, w) == scan_region(d, w));
  }
}

TEST_CASE("validate: two output pins on one net -> MultiDriver") {
  Log log;
  Design d = build_design(toy_tech(), inverter_netlist(), log);
  Instance& u2 = d.add_instance("u2", toy_tech().master_index("INVX1"));
  d.connect(u2.id, 1, d.net_by_name.at("out"));  // second Y driver
  d.connect(u2.id, 0, d.net_by_name.at("in"));
  int multi = 0;
  for (const auto& v : validate(d))
    if (v.kind == ViolationKind::MultiDriver) ++multi;
  CHECK(multi == 1);
}

TEST_CASE("validate: off-site placement detected") {
  Design d = testsupport::random_design(toy_tech(), 6);
  REQUIRE(!d.instances.empty());
  int placed_id = -1;
  for (auto& inst : d.instances)
    if (inst.placed()) {
      placed_id = inst.id;
      break;
    }
  REQUIRE(placed_id >= 0);
  // x mod site_width != 0 after a 1 DBU nudge
  d.instances[placed_id].loc.x += 1;
  bool off_site = false;
  for (const auto& v : validate(d))
    if (v.kind == ViolationKind::OffSite && v.a == placed_id) off_site = true;
  CHECK(off_site);
}

TEST_CASE("eval: hpwl basics") {
  const TechLibrary& tech = toy_tech();
  Log log;
  NetlistAST ast;
  ast.module_name = "m";
  ast.ports = {{"a", PinDir::Input}, {"b", PinDir::Input}, {"c", PinDir::Input}};
  Design d = build_design(tech, ast, log);
  d.die = {{0, 0}, {10000, 10000}};
  d.core = d.die;
  d.ports[0].loc = {0, 0};
  d.ports[1].loc = {3, 4};
  d.ports[2].loc = {3, 0};
  for (auto& p : d.ports) p.status = PlaceStatus::Fixed;

  Net& n = d.nets[0];
  SUBCASE("two pins (0,0),(3,4) -> 7") {
    d.connect_port(1, n.id);
    CHECK(eval::net_hpwl(d, n) == 7);
  }
  SUBCASE("third pin inside bbox leaves hpwl unchanged") {
    d.connect_port(1, n.id);
    d.connect_port(2, n.id);
    CHECK(eval::net_hpwl(d, n) == 7);
  }
}

TEST_CASE("eval: total_hpwl equals per-net min/max scan oracle") {
  Design d = testsupport::random_design(toy_tech(), 8);
  Dbu oracle = 0;
  for (const auto& net : d.nets) {
    if (net.is_pg() || net.pins.size() < 2) continue;
    Dbu lox = 0, hix = 0, loy = 0, hiy = 0;
    bool first = true;
    for (const auto& pin : net.pins) {
      if (!pin.is_port() && !d.instances[pin.inst].placed()) continue;
      Point p = d.pin_location(pin);
      if (first) {
        lox = hix = p.x;
        loy = hiy = p.y;
        first = false;
      }
      lox = std::min(lox, p.x);
      hix = std::max(hix, p.x);
      loy = std::min(loy, p.y);
      hiy = std::max(hiy, p.y);
    }
    if (!first) oracle += (hix - lox) + (hiy - loy);
  }
  CHECK(eval::total_hpwl(d) == oracle);

  // permutation invariance over pin order
  Design shuffled = d;
  for (auto& net : shuffled.nets)
    if (net.pins.size() > 1) std::reverse(net.pins.begin(), net.pins.end());
  CHECK(eval::total_hpwl(shuffled) == oracle);
}

TEST_CASE("eval: density map conserves area and splits straddlers") {
  const TechLibrary& tech = testsupport::make_unit_tech();
  Log log;
  NetlistAST ast;
  ast.module_name = "m";
  Design d2 = build_design(tech, ast, log);
  d2.die = {{0, 0}, {9600, 9600}};
  d2.core = d2.die;
  // INV is 480x2400; bin 4800 -> cell entirely inside bin (0,0)
  Instance& u1 = d2.add_instance("u1", tech.master_index("INV"));
  u1.status = PlaceStatus::Placed;
  u1.loc = {0, 0};
  // straddler: centered on the vertical bin boundary at x=4800
  Instance& u2 = d2.add_instance("u2", tech.master_index("INV"));
  u2.status = PlaceStatus::Placed;
  u2.loc = {4800 - 240, 4800};

  eval::BinGrid grid = eval::density_map(d2, 4800);
  REQUIRE(grid.nx == 2);
  REQUIRE(grid.ny == 2);
  const double cell_area = 480.0 * 2400.0;
  const double bin_area = 4800.0 * 4800.0;
  CHECK(grid.at(0, 0) == doctest::Approx(cell_area / bin_area));
  // straddler splits half/half
  CHECK(grid.at(0, 1) == doctest::Approx(0.5 * cell_area / bin_area));
  CHECK(grid.at(1, 1) == doctest::Approx(0.5 * cell_area / bin_area));

  // conservation: sum(bin value x bin area) == sum of instance areas
  double total = 0.0;
  for (int y = 0; y < grid.ny; ++y)
    for (int x = 0; x < grid.nx; ++x) total += grid.at(x, y) * grid.bin_rect(x, y).area();
  CHECK(total == doctest::Approx(2 * cell_area).epsilon(1e-12));
}

TEST_CASE("eval: evaluators leave the design unchanged") {
  Design d = testsupport::random_design(toy_tech(), 12);
  const std::string before = io::write_def(d);
  eval::total_hpwl(d);
  eval::density_map(d, eval::default_bin_size(d));
  CHECK(io::write_def(d) == before);
}
