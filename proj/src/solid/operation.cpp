#include "lsd/solid/operation.hpp"

namespace lsd::solid {

const Operation& bonding2d() {
  static const Operation op{
      "bond",
      Combinator::union_of,
      {SelectorKind::edge, SelectorKind::edge},
      [](const SelectedValues& v) {
        const auto& a = v[0];
        const auto& b = v[1];
        using K = LinearConstraint::Kind;
        return std::vector<LinearConstraint>{
            {K::equal, a[0], b[2]},
            {K::equal, a[1], b[3]},
            {K::equal, a[2], b[0]},
            {K::equal, a[3], b[1]},
        };
      },
  };
  return op;
}

const Operation& punch() {
  static const Operation op{
      "punch",
      Combinator::difference,
      {SelectorKind::centre, SelectorKind::centre},
      [](const SelectedValues& v) {
        const auto& a = v[0];
        const auto& b = v[1];
        using K = LinearConstraint::Kind;
        return std::vector<LinearConstraint>{
            {K::equal, a[0], b[0]},
            {K::equal, a[1], b[1]},
            {K::leq, b[2], a[2]},
        };
      },
  };
  return op;
}

}  // namespace lsd::solid
