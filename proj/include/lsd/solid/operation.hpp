#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lsd/solid/param_expr.hpp"
#include "lsd/solid/shape.hpp"

namespace lsd::solid {

enum class SelectorKind {
  edge,    // (x1, y1, x2, y2) of a named open edge
  centre,  // (b, c, r) of a disk
};

struct LinearConstraint {
  enum class Kind { equal, leq } kind = Kind::equal;
  ParamExpr lhs;
  ParamExpr rhs;
};

using SelectedValues = std::vector<std::vector<ParamExpr>>;

// An operation (F, L, C): combinator, one selector per operand, and a
// constraint over the selected values.
struct Operation {
  std::string name;
  Combinator combinator = Combinator::union_of;
  std::vector<SelectorKind> selectors;
  std::function<std::vector<LinearConstraint>(const SelectedValues&)> constraint;

  std::size_t arity() const { return selectors.size(); }
};

// Joins two open edges: start of each coincides with the end of the other.
const Operation& bonding2d();

// Removes a smaller concentric disk from a disk.
const Operation& punch();

}  // namespace lsd::solid
