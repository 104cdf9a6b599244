#include "lsd/solid/geometry.hpp"

#include <algorithm>

namespace lsd::solid {

Rational cross(const Point& a, const Point& b, const Point& p) {
  return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

Rational signed_area(const Polygon& polygon) {
  Rational twice = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

bool polygon_contains(const Polygon& polygon, const Point& p) {
  if (polygon.size() < 3 || signed_area(polygon) <= 0) return false;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    if (cross(polygon[i], polygon[(i + 1) % polygon.size()], p) < 0) return false;
  }
  return true;
}

namespace {

bool separated_along_edges(const Polygon& a, const Polygon& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& p = a[i];
    const auto& q = a[(i + 1) % a.size()];
    Rational nx = p.y - q.y;
    Rational ny = q.x - p.x;
    auto project = [&](const Polygon& poly) {
      Rational lo = nx * poly[0].x + ny * poly[0].y;
      Rational hi = lo;
      for (const auto& v : poly) {
        Rational d = nx * v.x + ny * v.y;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      return std::pair{lo, hi};
    };
    auto [alo, ahi] = project(a);
    auto [blo, bhi] = project(b);
    if (ahi <= blo || bhi <= alo) return true;
  }
  return false;
}

}  // namespace

bool interiors_overlap(const Polygon& a, const Polygon& b) {
  if (a.size() < 3 || b.size() < 3) return false;
  if (signed_area(a) <= 0 || signed_area(b) <= 0) return false;
  return !separated_along_edges(a, b) && !separated_along_edges(b, a);
}

Rational squared_distance(const Point& a, const Point& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

Rational squared_distance_to_segment(const Point& p, const Point& a, const Point& b) {
  Rational dx = b.x - a.x;
  Rational dy = b.y - a.y;
  Rational len2 = dx * dx + dy * dy;
  if (len2 == 0) return squared_distance(p, a);
  Rational t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  Point foot{a.x + t * dx, a.y + t * dy};
  return squared_distance(p, foot);
}

}  // namespace lsd::solid
