#include <algorithm>
#include <cmath>

#include "pdesk/eval/metrics.hpp"
#include "pdesk/fp/floorplan.hpp"
#include "pdesk/place/placer.hpp"
#include "pdesk/route/route_grid.hpp"

namespace pdesk::place {

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Symmetric sparse system in CSR, built fresh each re-linearization.
class QuadSystem {
 public:
  explicit QuadSystem(int n) : n_(n), diag_(n, 0.0), rhs_(n, 0.0) {}

  void add_pair(int a, int b, double w) {
    diag_[a] += w;
    diag_[b] += w;
    off_.push_back({a, b, -w});
  }
  void add_diag(int a, double w) { diag_[a] += w; }
  void add_rhs(int a, double v) { rhs_[a] += v; }

  // Jacobi-preconditioned CG. x holds the warm start and the result.
  void solve(std::vector<double>& x, double tol, int max_iters) const {
    std::vector<std::vector<std::pair<int, double>>> adj(n_);
    for (const auto& t : off_) {
      adj[t.a].push_back({t.b, t.w});
      adj[t.b].push_back({t.a, t.w});
    }
    auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
      for (int i = 0; i < n_; ++i) {
        double acc = diag_[i] * v[i];
        for (const auto& [j, w] : adj[i]) acc += w * v[j];
        out[i] = acc;
      }
    };

    std::vector<double> r(n_), z(n_), p(n_), ap(n_);
    apply(x, r);
    double bnorm = 0.0;
    for (int i = 0; i < n_; ++i) {
      r[i] = rhs_[i] - r[i];
      bnorm += rhs_[i] * rhs_[i];
    }
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) bnorm = 1.0;

    for (int i = 0; i < n_; ++i) z[i] = diag_[i] > 0 ? r[i] / diag_[i] : r[i];
    p = z;
    double rz = 0.0;
    for (int i = 0; i < n_; ++i) rz += r[i] * z[i];

    for (int it = 0; it < max_iters; ++it) {
      double rnorm = 0.0;
      for (int i = 0; i < n_; ++i) rnorm += r[i] * r[i];
      if (std::sqrt(rnorm) <= tol * bnorm) break;
      apply(p, ap);
      double pap = 0.0;
      for (int i = 0; i < n_; ++i) pap += p[i] * ap[i];
      if (pap <= 0.0) break;
      const double alpha = rz / pap;
      for (int i = 0; i < n_; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      double rz_new = 0.0;
      for (int i = 0; i < n_; ++i) {
        z[i] = diag_[i] > 0 ? r[i] / diag_[i] : r[i];
        rz_new += r[i] * z[i];
      }
      const double beta = rz_new / rz;
      rz = rz_new;
      for (int i = 0; i < n_; ++i) p[i] = z[i] + beta * p[i];
    }
  }

 private:
  struct Triplet {
    int a, b;
    double w;
  };
  int n_;
  std::vector<double> diag_;
  std::vector<double> rhs_;
  std::vector<Triplet> off_;
};

struct NetPin {
  int var;        // movable variable index, or -1
  double off_x;   // pin offset from the cell center (movable)
  double off_y;
  double abs_x;   // absolute pin position (fixed), or current position
  double abs_y;
};

class GlobalPlacer {
 public:
  GlobalPlacer(Design& d, const PlacerConfig& cfg) : d_(d), cfg_(cfg) {}

  void run() {
    collect_movables();
    if (movables_.empty()) throw Error(ErrorCode::NoMovableCells, d_.name);
    init_positions();

    const Dbu bin = cfg_.bin_size > 0 ? cfg_.bin_size : d_.row_height() * 4;
    std::vector<Vec2> anchors;
    double anchor_w = 0.0;

    std::vector<Vec2> best = pos_;
    double best_overflow = 1e300;

    for (int iter = 0; iter <= cfg_.max_iterations; ++iter) {
      solve_axis(0, iter, anchors, anchor_w);
      solve_axis(1, iter, anchors, anchor_w);
      clamp_positions();

      const double over = max_density(bin);
      if (over <= cfg_.target_density) {
        write_back();
        return;
      }
      if (over < best_overflow) {
        best_overflow = over;
        best = pos_;
      }
      // rough legalization: shed from over-full bins, then pull back with
      // anchors at the spread locations
      const int moved = spread(bin);
      if (moved == 0) break;  // overflow is all fixed area; nothing to shed
      anchors = pos_;
      anchor_w = cfg_.anchor_alpha * (iter + 1);
      if (max_density(bin) <= cfg_.target_density) {
        best = pos_;
        best_overflow = 0.0;
      }
    }
    pos_ = best;
    write_back();
  }

 private:
  void collect_movables() {
    var_of_.assign(d_.instances.size(), -1);
    for (const auto& inst : d_.instances) {
      if (!d_.movable(inst)) continue;
      var_of_[inst.id] = static_cast<int>(movables_.size());
      movables_.push_back(inst.id);
    }
  }

  void init_positions() {
    pos_.resize(movables_.size());
    const Point c = d_.core.center();
    for (std::size_t v = 0; v < movables_.size(); ++v) {
      const Instance& inst = d_.instances[movables_[v]];
      if (inst.placed()) {
        const Rect r = d_.instance_rect(inst);
        pos_[v] = {static_cast<double>(r.center().x), static_cast<double>(r.center().y)};
      } else {
        pos_[v] = {static_cast<double>(c.x), static_cast<double>(c.y)};
      }
    }
  }

  std::vector<NetPin> net_pins(const Net& net) const {
    std::vector<NetPin> pins;
    for (const auto& ref : net.pins) {
      NetPin p{};
      if (ref.is_port()) {
        p.var = -1;
        p.abs_x = static_cast<double>(d_.ports[ref.port].loc.x);
        p.abs_y = static_cast<double>(d_.ports[ref.port].loc.y);
      } else {
        const Instance& inst = d_.instances[ref.inst];
        const Point pin_pos = d_.pin_location(ref);
        const int var = var_of_[inst.id];
        if (var < 0) {
          p.var = -1;
          p.abs_x = static_cast<double>(pin_pos.x);
          p.abs_y = static_cast<double>(pin_pos.y);
        } else {
          const Rect r = d_.instance_rect(inst);
          p.var = var;
          p.off_x = static_cast<double>(pin_pos.x - r.center().x);
          p.off_y = static_cast<double>(pin_pos.y - r.center().y);
          p.abs_x = pos_[var].x + p.off_x;
          p.abs_y = pos_[var].y + p.off_y;
        }
      }
      pins.push_back(p);
    }
    return pins;
  }

  // axis 0 = x, 1 = y
  void solve_axis(int axis, int iter, const std::vector<Vec2>& anchors, double anchor_w) {
    const int n = static_cast<int>(movables_.size());
    QuadSystem sys(n);
    const double eps = static_cast<double>(d_.site_width());

    for (const auto& net : d_.nets) {
      if (net.is_pg() || net.pins.size() < 2 || net.pins.size() > 64) continue;
      auto pins = net_pins(net);
      const std::size_t p = pins.size();

      auto coord = [&](const NetPin& pin) { return axis == 0 ? pin.abs_x : pin.abs_y; };
      std::size_t lo = 0, hi = 0;
      for (std::size_t i = 1; i < p; ++i) {
        if (coord(pins[i]) < coord(pins[lo])) lo = i;
        if (coord(pins[i]) > coord(pins[hi])) hi = i;
      }
      if (lo == hi) hi = p - 1 != lo ? p - 1 : 0;

      auto connect = [&](std::size_t i, std::size_t j) {
        const NetPin &a = pins[i], &b = pins[j];
        if (a.var < 0 && b.var < 0) return;
        if (a.var >= 0 && a.var == b.var) return;
        double w = 2.0 / static_cast<double>(p - 1);
        if (iter > 0) w /= std::max(std::abs(coord(a) - coord(b)), eps);
        else w /= eps;  // uniform weights before the first spreading round
        const double oa = a.var >= 0 ? (axis == 0 ? a.off_x : a.off_y) : 0.0;
        const double ob = b.var >= 0 ? (axis == 0 ? b.off_x : b.off_y) : 0.0;
        if (a.var >= 0 && b.var >= 0) {
          sys.add_pair(a.var, b.var, w);
          sys.add_rhs(a.var, w * (ob - oa));
          sys.add_rhs(b.var, w * (oa - ob));
        } else {
          const NetPin& m = a.var >= 0 ? a : b;
          const NetPin& f = a.var >= 0 ? b : a;
          const double om = a.var >= 0 ? oa : ob;
          sys.add_diag(m.var, w);
          sys.add_rhs(m.var, w * (coord(f) - om));
        }
      };

      connect(lo, hi);
      for (std::size_t i = 0; i < p; ++i) {
        if (i == lo || i == hi) continue;
        connect(lo, i);
        connect(hi, i);
      }
    }

    if (anchor_w > 0.0 && anchors.size() == movables_.size()) {
      for (int v = 0; v < n; ++v) {
        sys.add_diag(v, anchor_w);
        sys.add_rhs(v, anchor_w * (axis == 0 ? anchors[v].x : anchors[v].y));
      }
    }

    std::vector<double> x(n);
    for (int v = 0; v < n; ++v) x[v] = axis == 0 ? pos_[v].x : pos_[v].y;
    sys.solve(x, cfg_.cg_tolerance, cfg_.cg_max_iters);
    for (int v = 0; v < n; ++v) (axis == 0 ? pos_[v].x : pos_[v].y) = x[v];
  }

  void clamp_positions() {
    for (std::size_t v = 0; v < movables_.size(); ++v) {
      const CellMaster& m = d_.master_of(d_.instances[movables_[v]]);
      const double hw = m.width / 2.0, hh = m.height / 2.0;
      pos_[v].x = std::clamp(pos_[v].x, d_.core.ll.x + hw, d_.core.ur.x - hw);
      pos_[v].y = std::clamp(pos_[v].y, d_.core.ll.y + hh, d_.core.ur.y - hh);
    }
  }

  void write_back() {
    for (std::size_t v = 0; v < movables_.size(); ++v) {
      Instance& inst = d_.instances[movables_[v]];
      const CellMaster& m = d_.master_of(inst);
      inst.loc = {static_cast<Dbu>(std::llround(pos_[v].x - m.width / 2.0)),
                  static_cast<Dbu>(std::llround(pos_[v].y - m.height / 2.0))};
      inst.status = PlaceStatus::Placed;
    }
  }

  // ---- density / spreading over the candidate positions ----

  struct Bins {
    int nx = 0, ny = 0;
    Dbu size = 0;
    Rect extent;
    std::vector<double> area;    // bin area (last row/col may be partial)
    std::vector<double> fixed;   // blocked area: fixed cells + macro halos
    std::vector<double> cap;     // max(0, area*target - fixed)
    std::vector<double> load;    // movable area
    int at(Dbu x, Dbu y) const {
      int bx = std::clamp<int>(static_cast<int>((x - extent.ll.x) / size), 0, nx - 1);
      int by = std::clamp<int>(static_cast<int>((y - extent.ll.y) / size), 0, ny - 1);
      return by * nx + bx;
    }
  };

  Bins make_bins(Dbu bin) const {
    Bins b;
    b.size = bin;
    b.extent = d_.core;
    b.nx = std::max<int>(1, static_cast<int>((d_.core.width() + bin - 1) / bin));
    b.ny = std::max<int>(1, static_cast<int>((d_.core.height() + bin - 1) / bin));
    const std::size_t n = static_cast<std::size_t>(b.nx) * b.ny;
    b.area.assign(n, 0.0);
    b.fixed.assign(n, 0.0);
    b.cap.assign(n, 0.0);
    b.load.assign(n, 0.0);

    const Dbu halo = route::default_gcell_size(*d_.tech);
    std::vector<Rect> blocked = fp::macro_halos(d_, halo);
    for (const auto& inst : d_.instances) {
      if (!inst.placed() || d_.movable(inst)) continue;
      if (d_.master_of(inst).cls == MasterClass::Block) continue;  // halo covers it
      blocked.push_back(d_.instance_rect(inst));
    }

    for (int y = 0; y < b.ny; ++y) {
      for (int x = 0; x < b.nx; ++x) {
        Rect r{{b.extent.ll.x + x * bin, b.extent.ll.y + y * bin},
               {std::min(b.extent.ll.x + (x + 1) * bin, b.extent.ur.x),
                std::min(b.extent.ll.y + (y + 1) * bin, b.extent.ur.y)}};
        const std::size_t i = static_cast<std::size_t>(y) * b.nx + x;
        b.area[i] = static_cast<double>(r.area());
        double fixed = 0.0;
        for (const auto& blk : blocked) {
          const Rect ov = r.intersection(blk.intersection(b.extent));
          if (!ov.empty()) fixed += static_cast<double>(ov.area());
        }
        b.fixed[i] = std::min(fixed, b.area[i]);
        b.cap[i] = std::max(0.0, b.area[i] * cfg_.target_density - b.fixed[i]);
      }
    }
    return b;
  }

  double cell_area(std::size_t v) const {
    const CellMaster& m = d_.master_of(d_.instances[movables_[v]]);
    return static_cast<double>(m.width) * static_cast<double>(m.height);
  }

  double max_density(Dbu bin) const {
    Bins b = make_bins(bin);
    for (std::size_t v = 0; v < movables_.size(); ++v)
      b.load[b.at(static_cast<Dbu>(pos_[v].x), static_cast<Dbu>(pos_[v].y))] += cell_area(v);
    double worst = 0.0;
    for (std::size_t i = 0; i < b.load.size(); ++i)
      if (b.area[i] > 0.0) worst = std::max(worst, (b.load[i] + b.fixed[i]) / b.area[i]);
    return worst;
  }

  int spread(Dbu bin) {
    Bins b = make_bins(bin);
    std::vector<std::vector<int>> cells(b.cap.size());
    for (std::size_t v = 0; v < movables_.size(); ++v) {
      const int i = b.at(static_cast<Dbu>(pos_[v].x), static_cast<Dbu>(pos_[v].y));
      cells[i].push_back(static_cast<int>(v));
      b.load[i] += cell_area(v);
    }
    std::vector<int> cursor(b.cap.size(), 0);
    int moved = 0;

    for (int by = 0; by < b.ny; ++by) {
      for (int bx = 0; bx < b.nx; ++bx) {
        const int i = by * b.nx + bx;
        if (b.load[i] <= b.cap[i]) continue;
        // shed the largest cells first, id as the tie-break
        std::sort(cells[i].begin(), cells[i].end(), [&](int a, int c) {
          const double aa = cell_area(a), ac = cell_area(c);
          if (aa != ac) return aa > ac;
          return movables_[a] < movables_[c];
        });
        std::size_t k = 0;
        while (b.load[i] > b.cap[i] && k < cells[i].size()) {
          const int v = cells[i][k];
          const double area = cell_area(v);
          int target = find_target(b, bx, by, area);
          if (target < 0 || target == i) {
            ++k;
            continue;
          }
          b.load[i] -= area;
          b.load[target] += area;
          place_in_bin(b, target, cursor[target]++, v);
          cells[i].erase(cells[i].begin() + k);
          cells[target].push_back(v);
          ++moved;
        }
      }
    }
    return moved;
  }

  // nearest bin (BFS ring order) able to take `area`; -1 when the whole core
  // is saturated
  int find_target(const Bins& b, int bx, int by, double area) const {
    const int max_r = std::max(b.nx, b.ny);
    int fallback = -1;
    double fallback_slack = -1e300;
    for (int r = 1; r <= max_r; ++r) {
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
          const int x = bx + dx, y = by + dy;
          if (x < 0 || y < 0 || x >= b.nx || y >= b.ny) continue;
          const int i = y * b.nx + x;
          if (b.load[i] + area <= b.cap[i]) return i;
          const double slack = b.cap[i] - b.load[i];
          if (slack > fallback_slack) {
            fallback_slack = slack;
            fallback = i;
          }
        }
      }
    }
    return fallback;
  }

  void place_in_bin(const Bins& b, int bin_index, int slot, int v) {
    const int bx = bin_index % b.nx;
    const int by = bin_index / b.nx;
    const Dbu cx = b.extent.ll.x + bx * b.size + b.size / 2;
    const Dbu cy = b.extent.ll.y + by * b.size + b.size / 2;
    // deterministic packing offsets inside the bin
    const int gx = slot % 3 - 1;
    const int gy = (slot / 3) % 3 - 1;
    pos_[v].x = static_cast<double>(cx + gx * (b.size / 4));
    pos_[v].y = static_cast<double>(cy + gy * (b.size / 4));
  }

  Design& d_;
  const PlacerConfig& cfg_;
  std::vector<int> movables_;   // instance ids
  std::vector<int> var_of_;     // instance id -> variable
  std::vector<Vec2> pos_;       // cell centers
};

}  // namespace

void global_place(Design& d, const PlacerConfig& cfg) {
  GlobalPlacer placer(d, cfg);
  placer.run();
}

}  // namespace pdesk::place
