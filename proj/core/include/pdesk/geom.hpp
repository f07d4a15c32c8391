#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace pdesk {

// Database unit. 1 DBU = 1 nm in the bundled technology. All geometry is
// integer; analysis quantities (ns, fF, uW) are double.
using Dbu = std::int64_t;

struct Point {
  Dbu x = 0;
  Dbu y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  bool operator<(const Point& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline Dbu manhattan(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct Rect {
  Point ll;
  Point ur;

  friend bool operator==(const Rect&, const Rect&) = default;

  Dbu width() const { return ur.x - ll.x; }
  Dbu height() const { return ur.y - ll.y; }
  Dbu area() const { return width() * height(); }
  Point center() const { return {(ll.x + ur.x) / 2, (ll.y + ur.y) / 2}; }
  bool valid() const { return ll.x <= ur.x && ll.y <= ur.y; }
  bool empty() const { return ll.x >= ur.x || ll.y >= ur.y; }

  bool contains(const Point& p) const {
    return p.x >= ll.x && p.x <= ur.x && p.y >= ll.y && p.y <= ur.y;
  }
  bool contains(const Rect& r) const {
    return r.ll.x >= ll.x && r.ur.x <= ur.x && r.ll.y >= ll.y && r.ur.y <= ur.y;
  }
  // Closed-rectangle intersection test (shared edges count as intersecting).
  bool intersects(const Rect& r) const {
    return r.ll.x <= ur.x && r.ur.x >= ll.x && r.ll.y <= ur.y && r.ur.y >= ll.y;
  }
  // Open-interior overlap test (shared edges do not count).
  bool overlaps(const Rect& r) const {
    return r.ll.x < ur.x && r.ur.x > ll.x && r.ll.y < ur.y && r.ur.y > ll.y;
  }
  Rect intersection(const Rect& r) const {
    return {{std::max(ll.x, r.ll.x), std::max(ll.y, r.ll.y)},
            {std::min(ur.x, r.ur.x), std::min(ur.y, r.ur.y)}};
  }
  Rect bloat(Dbu d) const { return {{ll.x - d, ll.y - d}, {ur.x + d, ur.y + d}}; }
};

inline Rect bounding_box(const Rect& a, const Rect& b) {
  return {{std::min(a.ll.x, b.ll.x), std::min(a.ll.y, b.ll.y)},
          {std::max(a.ur.x, b.ur.x), std::max(a.ur.y, b.ur.y)}};
}

// Row flipping only: S and FN are rejected at parse.
enum class Orient { N, FS };

inline const char* orient_name(Orient o) { return o == Orient::N ? "N" : "FS"; }

std::string point_str(const Point& p);
std::string rect_str(const Rect& r);

}  // namespace pdesk
