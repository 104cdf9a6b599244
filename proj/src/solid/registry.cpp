#include "lsd/solid/family.hpp"

#include <stdexcept>

namespace lsd::solid {

bool SolidFamily::has_edge(std::string_view edge) const {
  for (const auto& e : edges) {
    if (e.name == edge) return true;
  }
  return false;
}

void Registry::add(SolidFamily family) {
  if (family.property_params.size() != space_.properties.size()) {
    throw std::invalid_argument("family " + family.name + " does not match the design space properties");
  }
  auto name = family.name;
  if (!families_.emplace(name, std::move(family)).second) {
    throw std::invalid_argument("duplicate solid family " + name);
  }
}

const SolidFamily* Registry::find(std::string_view name) const {
  auto it = families_.find(name);
  return it == families_.end() ? nullptr : &it->second;
}

namespace {

ParamExpr p(std::span<const ParamExpr> params, std::size_t i) { return params[i]; }

// Vertices (x,0) (x+w,0) (x+w,hr) (x,hl): left side is vertex 3 -> 0,
// right side is vertex 1 -> 2.
std::vector<ExprPoint> box(const ParamExpr& x, const ParamExpr& w, const ParamExpr& hl,
                           const ParamExpr& hr) {
  return {ExprPoint{x, 0}, ExprPoint{x + w, 0}, ExprPoint{x + w, hr}, ExprPoint{x, hl}};
}

const EdgeSpec kLeft{"left", 3, 0};
const EdgeSpec kRight{"right", 1, 2};

SolidFamily fixed_box(std::string name, int width, int height, std::vector<EdgeSpec> edges) {
  SolidFamily f;
  f.name = std::move(name);
  f.params = {{"x", ParamRole::position, 0}};
  f.vertices = [width, height](std::span<const ParamExpr> ps) {
    return box(p(ps, 0), width, height, height);
  };
  f.edges = std::move(edges);
  return f;
}

Registry build_desk() {
  Registry r;
  r.add(fixed_box("Handle", kHandleWidth, kHandleHeight, {kRight}));

  SolidFamily bit;
  bit.name = "Bit";
  bit.params = {{"x", ParamRole::position, 0}, {"h", ParamRole::shape, 1}};
  bit.vertices = [](std::span<const ParamExpr> ps) { return box(p(ps, 0), kBitWidth, p(ps, 1), p(ps, 1)); };
  bit.edges = {kLeft, kRight};
  r.add(std::move(bit));

  SolidFamily lev;
  lev.name = "Leveller";
  lev.params = {{"x", ParamRole::position, 0}, {"hl", ParamRole::shape, 1}, {"hr", ParamRole::shape, 1}};
  lev.vertices = [](std::span<const ParamExpr> ps) {
    return box(p(ps, 0), kLevellerWidth, p(ps, 1), p(ps, 2));
  };
  lev.edges = {kLeft, kRight};
  r.add(std::move(lev));

  SolidFamily tip;
  tip.name = "Tip";
  tip.params = {{"x", ParamRole::position, 0}, {"h", ParamRole::shape, 1}};
  tip.vertices = [](std::span<const ParamExpr> ps) {
    const auto& x = p(ps, 0);
    return std::vector<ExprPoint>{{x, 0}, {x + kTipWidth, 0}, {x, p(ps, 1)}};
  };
  tip.edges = {{"left", 2, 0}};
  r.add(std::move(tip));

  r.add(fixed_box("LockFront", kLockFrontWidth, kLockHeight, {kRight}));
  r.add(fixed_box("LockBack", kLockBackWidth, kLockHeight, {kLeft}));

  SolidFamily chamber;
  chamber.name = "PinChamber";
  chamber.params = {{"x", ParamRole::position, 0}, {"cut", ParamRole::shape, 1}};
  chamber.vertices = [](std::span<const ParamExpr> ps) {
    return box(p(ps, 0), kChamberWidth, kLockHeight, kLockHeight);
  };
  chamber.decorations = [](std::span<const ParamExpr> ps) {
    const auto& x = p(ps, 0);
    std::vector<std::vector<ExprPoint>> lines;
    lines.push_back({{x + 1, 0}, {x + 1, kLockHeight}});
    lines.push_back({{x + Rational(1, 2), p(ps, 1)}, {x + Rational(3, 2), p(ps, 1)}});
    return lines;
  };
  chamber.edges = {kLeft, kRight};
  r.add(std::move(chamber));

  SolidFamily master;
  master.name = "MasterChamber";
  master.params = {{"x", ParamRole::position, 0}};
  master.vertices = [](std::span<const ParamExpr> ps) {
    return box(p(ps, 0), kChamberWidth, kLockHeight, kLockHeight);
  };
  master.decorations = [](std::span<const ParamExpr> ps) {
    const auto& x = p(ps, 0);
    std::vector<std::vector<ExprPoint>> lines;
    lines.push_back({{x + 1, 0}, {x + 1, kLockHeight}});
    for (int cut : {1, 2}) {
      lines.push_back({{x + Rational(1, 2), cut}, {x + Rational(3, 2), cut}});
    }
    return lines;
  };
  master.edges = {kLeft, kRight};
  r.add(std::move(master));

  SolidFamily disk;
  disk.name = "Disk";
  disk.kind = SolidFamily::Kind::disk;
  disk.params = {{"b", ParamRole::position, 0}, {"c", ParamRole::position, 0}, {"r", ParamRole::shape, 1}};
  r.add(std::move(disk));

  SolidFamily square;
  square.name = "Square";
  square.params = {{"x1", ParamRole::position, 0}, {"y1", ParamRole::position, 0},
                   {"x2", ParamRole::position, 1}, {"y2", ParamRole::position, 0}};
  square.vertices = [](std::span<const ParamExpr> ps) {
    ExprPoint a{p(ps, 0), p(ps, 1)};
    ExprPoint b{p(ps, 2), p(ps, 3)};
    // Right-hand normal of a->b, same length.
    ParamExpr nx = p(ps, 1) - p(ps, 3);
    ParamExpr ny = p(ps, 2) - p(ps, 0);
    return std::vector<ExprPoint>{a, b, {b[0] + nx, b[1] + ny}, {a[0] + nx, a[1] + ny}};
  };
  square.edges = {{"e", 0, 1}};
  r.add(std::move(square));
  return r;
}

}  // namespace

const Registry& desk_registry() {
  static const Registry registry = build_desk();
  return registry;
}

SolidFamily rectangle_family(std::string name, Rational width, Rational height) {
  SolidFamily f;
  f.name = std::move(name);
  f.params = {{"x", ParamRole::position, 0}, {"y", ParamRole::position, 0}};
  f.vertices = [width, height](std::span<const ParamExpr> ps) {
    const auto& x = ps[0];
    const auto& y = ps[1];
    return std::vector<ExprPoint>{{x, y}, {x + width, y}, {x + width, y + height}, {x, y + height}};
  };
  f.edges = {{"bottom", 0, 1}, {"right", 1, 2}, {"top", 2, 3}, {"left", 3, 0}};
  return f;
}

}  // namespace lsd::solid
