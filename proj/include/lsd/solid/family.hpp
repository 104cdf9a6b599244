#pragma once

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lsd/solid/param_expr.hpp"

namespace lsd::solid {

// A design space: spatial dimensions plus named real-valued properties.
struct DesignSpace {
  int dimensions = 2;
  std::vector<std::string> properties;
};

enum class ParamRole {
  position,  // translation; anchoring keeps these free
  shape,
};

struct ParamSpec {
  std::string name;
  ParamRole role = ParamRole::shape;
  Rational hint{0};  // initial value while free
};

using ExprPoint = std::array<ParamExpr, 2>;

// Open edge of a polygonal family: the directed polygon side from vertex
// `from` to vertex `to`. The solid lies to its right.
struct EdgeSpec {
  std::string name;
  std::size_t from = 0;
  std::size_t to = 0;
};

// A parametrized solid: maps a parameter vector to a point set. Every
// coordinate is affine in the parameters, so selectors yield linear forms.
struct SolidFamily {
  enum class Kind { polygon, disk };

  std::string name;
  Kind kind = Kind::polygon;
  std::vector<ParamSpec> params;
  // Polygon families: convex vertex list, interior on the right of each side.
  std::function<std::vector<ExprPoint>(std::span<const ParamExpr>)> vertices;
  std::vector<EdgeSpec> edges;
  // Presentation-only polylines (pin cuts and the like).
  std::function<std::vector<std::vector<ExprPoint>>(std::span<const ParamExpr>)> decorations;
  // One parameter index per design-space property.
  std::vector<std::size_t> property_params;

  std::size_t param_count() const { return params.size(); }
  bool has_edge(std::string_view edge) const;
};

// Immutable once built; shared read-only by every execution.
class Registry {
 public:
  explicit Registry(DesignSpace space = {}) : space_(std::move(space)) {}

  // Throws std::invalid_argument on a duplicate name or a property mismatch.
  void add(SolidFamily family);
  const SolidFamily* find(std::string_view name) const;
  const DesignSpace& space() const { return space_; }
  const std::map<std::string, SolidFamily, std::less<>>& families() const { return families_; }

 private:
  DesignSpace space_;
  std::map<std::string, SolidFamily, std::less<>> families_;
};

// Key and lock parts, disks and free squares in a property-free 2D space.
//   Handle(x)             3 x 2, open right edge
//   Bit(x, h)             2 x h, open left/right edges
//   Leveller(x, hl, hr)   1 wide ramp, open left/right edges
//   Tip(x, h)             1 wide taper, open left edge
//   LockFront(x)          3 x 4, open right edge
//   PinChamber(x, cut)    2 x 4, one pin cut, open left/right edges
//   MasterChamber(x)      2 x 4, cuts at 1 and 2, open left/right edges
//   LockBack(x)           1 x 4, open left edge
//   Disk(b, c, r)
//   Square(x1, y1, x2, y2) built on its open edge "e" from (x1,y1) to (x2,y2)
const Registry& desk_registry();

// Fixed widths of the desk-scale parts.
inline constexpr int kHandleWidth = 3;
inline constexpr int kHandleHeight = 2;
inline constexpr int kBitWidth = 2;
inline constexpr int kLevellerWidth = 1;
inline constexpr int kTipWidth = 1;
inline constexpr int kLockFrontWidth = 3;
inline constexpr int kChamberWidth = 2;
inline constexpr int kLockBackWidth = 1;
inline constexpr int kLockHeight = 4;

// Axis-aligned rectangle family helper, exposed for tests building custom
// registries. Edges: "left" (up-going side reversed), "right", "top", "bottom".
SolidFamily rectangle_family(std::string name, Rational width, Rational height);

}  // namespace lsd::solid
