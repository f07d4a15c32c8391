#include "pdesk/geom.hpp"

namespace pdesk {

std::string point_str(const Point& p) {
  return "(" + std::to_string(p.x) + " " + std::to_string(p.y) + ")";
}

std::string rect_str(const Rect& r) {
  return point_str(r.ll) + "-" + point_str(r.ur);
}

}  // namespace pdesk
