#pragma once

#include <array>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsd/solid/family.hpp"
#include "lsd/solid/geometry.hpp"

namespace lsd::solid {

enum class Combinator { union_of, difference };

struct ShapeNode;
using Shape = std::shared_ptr<const ShapeNode>;

// Structure of a (possibly composite) solid. The parameter vector of a
// composite is the concatenation of its children's vectors, in order.
struct ShapeNode {
  const SolidFamily* family = nullptr;  // set for primitives
  Combinator combinator = Combinator::union_of;
  std::vector<Shape> children;
  std::size_t param_count = 0;
};

// Structural equality; shared subtrees need not be the same objects.
bool same_shape(const Shape& a, const Shape& b);

Shape make_leaf(const SolidFamily& family);
Shape make_composite(Combinator combinator, std::vector<Shape> children);

struct UnknownEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingInterface : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Edge names of a composite carry the child index as a prefix: "1.left"
// names the left edge of child 1.
std::vector<std::string> all_edge_names(const ShapeNode& shape);

// Endpoints (x1, y1, x2, y2) of a named edge as affine forms.
std::array<ParamExpr, 4> edge_of(const ShapeNode& shape, std::span<const ParamExpr> params,
                                 std::string_view edge);

// (b, c, r) of a primitive disk; throws MissingInterface for anything else.
std::array<ParamExpr, 3> centre_of(const ShapeNode& shape, std::span<const ParamExpr> params);

struct Leaf {
  const SolidFamily* family;
  std::span<const Rational> values;
};

std::vector<Leaf> leaves(const ShapeNode& shape, std::span<const Rational> values);

// Ground evaluation of a primitive polygon.
Polygon leaf_polygon(const SolidFamily& family, std::span<const Rational> values);

bool contains(const ShapeNode& shape, std::span<const Rational> values, const Point& point,
              const DesignSpace& space);

// Non-emptiness witness: positive polygon area, positive disk radius.
bool nonempty(const ShapeNode& shape, std::span<const Rational> values, const DesignSpace& space);

// Rendering outline: one polygon per primitive (disks approximated).
std::vector<Polygon> outline(const ShapeNode& shape, std::span<const Rational> values);
std::vector<std::vector<Point>> decorations(const ShapeNode& shape, std::span<const Rational> values);

// Two primitives with different property values overlap somewhere: the
// reduction operator empties the composite.
bool has_property_conflict(const ShapeNode& shape, std::span<const Rational> values,
                           const DesignSpace& space);

}  // namespace lsd::solid
