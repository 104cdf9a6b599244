#include "lsd/solid/shape.hpp"

#include <charconv>
#include <cmath>

namespace lsd::solid {

bool same_shape(const Shape& a, const Shape& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->family != b->family || a->combinator != b->combinator ||
      a->param_count != b->param_count || a->children.size() != b->children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!same_shape(a->children[i], b->children[i])) return false;
  }
  return true;
}

Shape make_leaf(const SolidFamily& family) {
  auto node = std::make_shared<ShapeNode>();
  node->family = &family;
  node->param_count = family.param_count();
  return node;
}

Shape make_composite(Combinator combinator, std::vector<Shape> children) {
  auto node = std::make_shared<ShapeNode>();
  node->combinator = combinator;
  for (const auto& c : children) node->param_count += c->param_count;
  node->children = std::move(children);
  return node;
}

namespace {

std::vector<ParamExpr> as_exprs(std::span<const Rational> values) {
  return {values.begin(), values.end()};
}

Rational eval(const ParamExpr& e) {
  if (!e.is_constant()) throw std::logic_error("geometry evaluated on non-ground parameters");
  return e.constant();
}

// Splits "3.rest" into (3, "rest").
bool split_child(std::string_view edge, std::size_t& index, std::string_view& rest) {
  auto dot = edge.find('.');
  if (dot == std::string_view::npos) return false;
  auto head = edge.substr(0, dot);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), index);
  if (ec != std::errc() || ptr != head.data() + head.size()) return false;
  rest = edge.substr(dot + 1);
  return true;
}

template <typename T>
std::span<const T> child_slice(const ShapeNode& shape, std::span<const T> params, std::size_t child) {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < child; ++i) offset += shape.children[i]->param_count;
  return params.subspan(offset, shape.children[child]->param_count);
}

}  // namespace

std::vector<std::string> all_edge_names(const ShapeNode& shape) {
  std::vector<std::string> out;
  if (shape.family) {
    for (const auto& e : shape.family->edges) out.push_back(e.name);
    return out;
  }
  for (std::size_t i = 0; i < shape.children.size(); ++i) {
    for (auto& name : all_edge_names(*shape.children[i])) {
      out.push_back(std::to_string(i) + "." + name);
    }
  }
  return out;
}

std::array<ParamExpr, 4> edge_of(const ShapeNode& shape, std::span<const ParamExpr> params,
                                 std::string_view edge) {
  if (shape.family) {
    const auto& fam = *shape.family;
    for (const auto& e : fam.edges) {
      if (e.name != edge) continue;
      auto vs = fam.vertices(params);
      return {vs[e.from][0], vs[e.from][1], vs[e.to][0], vs[e.to][1]};
    }
    throw UnknownEdge("solid " + fam.name + " has no edge '" + std::string(edge) + "'");
  }
  std::size_t index = 0;
  std::string_view rest;
  if (!split_child(edge, index, rest) || index >= shape.children.size()) {
    throw UnknownEdge("composite solid has no edge '" + std::string(edge) + "'");
  }
  return edge_of(*shape.children[index], child_slice(shape, params, index), rest);
}

std::array<ParamExpr, 3> centre_of(const ShapeNode& shape, std::span<const ParamExpr> params) {
  if (!shape.family || shape.family->kind != SolidFamily::Kind::disk) {
    throw MissingInterface("centre selector applies only to disks");
  }
  return {params[0], params[1], params[2]};
}

std::vector<Leaf> leaves(const ShapeNode& shape, std::span<const Rational> values) {
  if (shape.family) return {Leaf{shape.family, values}};
  std::vector<Leaf> out;
  for (std::size_t i = 0; i < shape.children.size(); ++i) {
    auto sub = leaves(*shape.children[i], child_slice(shape, values, i));
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Polygon leaf_polygon(const SolidFamily& family, std::span<const Rational> values) {
  auto exprs = as_exprs(values);
  Polygon out;
  for (const auto& v : family.vertices(exprs)) out.push_back({eval(v[0]), eval(v[1])});
  return out;
}

namespace {

bool leaf_contains(const Leaf& leaf, const Point& pt) {
  if (leaf.family->kind == SolidFamily::Kind::disk) {
    const auto& v = leaf.values;
    return squared_distance(pt, {v[0], v[1]}) <= v[2] * v[2];
  }
  return polygon_contains(leaf_polygon(*leaf.family, leaf.values), pt);
}

bool leaf_nonempty(const Leaf& leaf) {
  if (leaf.family->kind == SolidFamily::Kind::disk) return leaf.values[2] > 0;
  return signed_area(leaf_polygon(*leaf.family, leaf.values)) > 0;
}

std::vector<Rational> leaf_properties(const Leaf& leaf) {
  std::vector<Rational> out;
  for (auto i : leaf.family->property_params) out.push_back(leaf.values[i]);
  return out;
}

bool leaves_overlap(const Leaf& a, const Leaf& b) {
  using Kind = SolidFamily::Kind;
  if (!leaf_nonempty(a) || !leaf_nonempty(b)) return false;
  if (a.family->kind == Kind::disk && b.family->kind == Kind::disk) {
    Rational r = a.values[2] + b.values[2];
    return squared_distance({a.values[0], a.values[1]}, {b.values[0], b.values[1]}) < r * r;
  }
  if (a.family->kind == Kind::disk) return leaves_overlap(b, a);
  auto poly = leaf_polygon(*a.family, a.values);
  if (b.family->kind == Kind::disk) {
    Point c{b.values[0], b.values[1]};
    Rational r2 = b.values[2] * b.values[2];
    if (polygon_contains(poly, c)) return true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (squared_distance_to_segment(c, poly[i], poly[(i + 1) % poly.size()]) < r2) return true;
    }
    return false;
  }
  return interiors_overlap(poly, leaf_polygon(*b.family, b.values));
}

}  // namespace

bool has_property_conflict(const ShapeNode& shape, std::span<const Rational> values,
                           const DesignSpace& space) {
  if (space.properties.empty() || shape.family) return false;
  auto ls = leaves(shape, values);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (leaf_properties(ls[i]) != leaf_properties(ls[j]) && leaves_overlap(ls[i], ls[j])) {
        return true;
      }
    }
  }
  return false;
}

namespace {

bool contains_raw(const ShapeNode& shape, std::span<const Rational> values, const Point& pt) {
  if (shape.family) return leaf_contains(Leaf{shape.family, values}, pt);
  if (shape.combinator == Combinator::difference) {
    if (!contains_raw(*shape.children[0], child_slice(shape, values, 0), pt)) return false;
    for (std::size_t i = 1; i < shape.children.size(); ++i) {
      if (contains_raw(*shape.children[i], child_slice(shape, values, i), pt)) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < shape.children.size(); ++i) {
    if (contains_raw(*shape.children[i], child_slice(shape, values, i), pt)) return true;
  }
  return false;
}

}  // namespace

bool contains(const ShapeNode& shape, std::span<const Rational> values, const Point& point,
              const DesignSpace& space) {
  if (has_property_conflict(shape, values, space)) return false;
  return contains_raw(shape, values, point);
}

bool nonempty(const ShapeNode& shape, std::span<const Rational> values, const DesignSpace& space) {
  if (has_property_conflict(shape, values, space)) return false;
  if (shape.family) return leaf_nonempty(Leaf{shape.family, values});
  if (shape.combinator == Combinator::difference) {
    // Only disk-minus-disk differences are produced (punch).
    auto a = leaves(*shape.children[0], child_slice(shape, values, 0));
    auto b = leaves(*shape.children[1], child_slice(shape, values, 1));
    if (a.size() != 1 || b.size() != 1 || a[0].family->kind != SolidFamily::Kind::disk ||
        b[0].family->kind != SolidFamily::Kind::disk) {
      throw std::logic_error("non-emptiness of a general difference is not supported");
    }
    if (!leaf_nonempty(a[0])) return false;
    // A minus B is empty iff B covers A: dist + rA <= rB.
    Rational gap = b[0].values[2] - a[0].values[2];
    if (gap < 0) return true;
    return squared_distance({a[0].values[0], a[0].values[1]}, {b[0].values[0], b[0].values[1]}) >
           gap * gap;
  }
  for (std::size_t i = 0; i < shape.children.size(); ++i) {
    if (nonempty(*shape.children[i], child_slice(shape, values, i), space)) return true;
  }
  return false;
}

std::vector<Polygon> outline(const ShapeNode& shape, std::span<const Rational> values) {
  std::vector<Polygon> out;
  for (const auto& leaf : leaves(shape, values)) {
    if (leaf.family->kind == SolidFamily::Kind::disk) {
      // 32-gon with vertices rounded to 1/10000; presentation only.
      Polygon poly;
      for (int i = 0; i < 32; ++i) {
        double angle = 2.0 * M_PI * i / 32.0;
        Rational cx(static_cast<long long>(std::llround(std::cos(angle) * 10000)), 10000);
        Rational cy(static_cast<long long>(std::llround(std::sin(angle) * 10000)), 10000);
        poly.push_back({leaf.values[0] + leaf.values[2] * cx, leaf.values[1] + leaf.values[2] * cy});
      }
      out.push_back(std::move(poly));
    } else {
      out.push_back(leaf_polygon(*leaf.family, leaf.values));
    }
  }
  return out;
}

std::vector<std::vector<Point>> decorations(const ShapeNode& shape, std::span<const Rational> values) {
  std::vector<std::vector<Point>> out;
  for (const auto& leaf : leaves(shape, values)) {
    if (!leaf.family->decorations) continue;
    auto exprs = as_exprs(leaf.values);
    for (const auto& line : leaf.family->decorations(exprs)) {
      std::vector<Point> pts;
      for (const auto& v : line) pts.push_back({eval(v[0]), eval(v[1])});
      out.push_back(std::move(pts));
    }
  }
  return out;
}

}  // namespace lsd::solid
