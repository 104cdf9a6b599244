#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsd/solid/param_expr.hpp"

namespace lsd::solid {

enum class Consistency { consistent, inconsistent, deferred };

struct Variable {
  std::string name;
  // Value reported for the variable while it is free. Anchoring and animation
  // planning read positions through hints.
  Rational hint;

  bool operator==(const Variable&) const = default;
};

// Linear equalities in solved (triangular) form plus inequalities that wait
// until they become ground. Every mutation is trailed so that rollback(mark)
// restores the solved form, the inequality set and the hints exactly.
class ConstraintStore {
 public:
  using Mark = std::size_t;

  VarId add_variable(std::string name, Rational hint = 0);
  std::size_t variable_count() const { return vars_.size(); }
  const Variable& variable(VarId var) const { return vars_.at(var); }
  void set_hint(VarId var, Rational hint);

  // Substitutes solved variables; the result mentions only free variables.
  ParamExpr resolve(const ParamExpr& expr) const;
  bool is_free(VarId var) const { return !solved_.contains(var); }
  bool is_ground(const ParamExpr& expr) const { return resolve(expr).is_constant(); }
  std::optional<Rational> ground_value(const ParamExpr& expr) const;
  // Free variables evaluate at their hints.
  Rational value(const ParamExpr& expr) const;

  // Gaussian elimination of e1 - e2 = 0. When a pivot must be chosen, the
  // newest variable not listed in keep_free is eliminated. On inconsistency
  // the store is left untouched.
  Consistency assert_equal(const ParamExpr& e1, const ParamExpr& e2,
                           std::span<const VarId> keep_free = {});
  // e1 <= e2. Decided immediately when ground, otherwise deferred and
  // re-checked whenever an equality grounds it.
  Consistency assert_leq(const ParamExpr& e1, const ParamExpr& e2);

  // Inequalities (as e <= 0) that are still not ground.
  std::vector<ParamExpr> deferred() const;
  const std::map<VarId, ParamExpr>& solved() const { return solved_; }

  Mark mark() const { return trail_.size(); }
  void rollback(Mark mark);

  bool operator==(const ConstraintStore& other) const {
    return vars_ == other.vars_ && solved_ == other.solved_ &&
           inequalities_ == other.inequalities_;
  }

 private:
  struct TrailEntry {
    enum class Kind { add_variable, set_row, add_inequality, set_hint } kind;
    VarId var = 0;
    std::optional<ParamExpr> old_row;
    Rational old_hint;
  };

  void set_row(VarId var, std::optional<ParamExpr> row);
  bool inequalities_hold() const;

  std::vector<Variable> vars_;
  std::map<VarId, ParamExpr> solved_;
  std::vector<ParamExpr> inequalities_;  // each means expr <= 0
  std::vector<TrailEntry> trail_;
};

}  // namespace lsd::solid
