#pragma once

#include <vector>

#include "lsd/rational.hpp"

namespace lsd::solid {

struct Point {
  Rational x;
  Rational y;
  bool operator==(const Point&) const = default;
};

// Convex polygon, vertices ordered so the interior lies to the right of each
// directed edge in screen coordinates (y grows downward). Equivalently the
// shoelace area is positive.
using Polygon = std::vector<Point>;

// (b - a) x (p - a); positive when p lies right of a->b.
Rational cross(const Point& a, const Point& b, const Point& p);

Rational signed_area(const Polygon& polygon);

// Closed point set; polygons with non-positive area are empty.
bool polygon_contains(const Polygon& polygon, const Point& p);

// True when the interiors of two convex polygons intersect in a region of
// positive area (shared boundary alone does not count).
bool interiors_overlap(const Polygon& a, const Polygon& b);

Rational squared_distance(const Point& a, const Point& b);

// Squared distance from p to the closed segment a-b.
Rational squared_distance_to_segment(const Point& p, const Point& a, const Point& b);

}  // namespace lsd::solid
