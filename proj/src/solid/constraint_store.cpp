#include "lsd/solid/constraint_store.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsd::solid {

VarId ConstraintStore::add_variable(std::string name, Rational hint) {
  vars_.push_back({std::move(name), std::move(hint)});
  trail_.push_back({TrailEntry::Kind::add_variable});
  return static_cast<VarId>(vars_.size() - 1);
}

void ConstraintStore::set_hint(VarId var, Rational hint) {
  auto& v = vars_.at(var);
  if (v.hint == hint) return;
  trail_.push_back({TrailEntry::Kind::set_hint, var, std::nullopt, v.hint});
  v.hint = std::move(hint);
}

ParamExpr ConstraintStore::resolve(const ParamExpr& expr) const {
  ParamExpr out(expr.constant());
  for (const auto& [var, coef] : expr.terms()) {
    auto it = solved_.find(var);
    if (it == solved_.end()) {
      out += ParamExpr::variable(var, coef);
    } else {
      out += it->second * coef;
    }
  }
  return out;
}

std::optional<Rational> ConstraintStore::ground_value(const ParamExpr& expr) const {
  auto r = resolve(expr);
  if (!r.is_constant()) return std::nullopt;
  return r.constant();
}

Rational ConstraintStore::value(const ParamExpr& expr) const {
  auto r = resolve(expr);
  Rational out = r.constant();
  for (const auto& [var, coef] : r.terms()) out += coef * vars_.at(var).hint;
  return out;
}

void ConstraintStore::set_row(VarId var, std::optional<ParamExpr> row) {
  auto it = solved_.find(var);
  std::optional<ParamExpr> old;
  if (it != solved_.end()) old = it->second;
  trail_.push_back({TrailEntry::Kind::set_row, var, std::move(old)});
  if (row) {
    solved_[var] = std::move(*row);
  } else {
    solved_.erase(var);
  }
}

bool ConstraintStore::inequalities_hold() const {
  for (const auto& ineq : inequalities_) {
    auto r = resolve(ineq);
    if (r.is_constant() && r.constant() > 0) return false;
  }
  return true;
}

Consistency ConstraintStore::assert_equal(const ParamExpr& e1, const ParamExpr& e2,
                                          std::span<const VarId> keep_free) {
  ParamExpr diff = resolve(e1 - e2);
  if (diff.is_constant()) {
    return diff.constant() == 0 ? Consistency::consistent : Consistency::inconsistent;
  }
  // Pivot: newest variable not protected, else newest overall.
  VarId pivot = diff.terms().rbegin()->first;
  for (auto it = diff.terms().rbegin(); it != diff.terms().rend(); ++it) {
    if (std::find(keep_free.begin(), keep_free.end(), it->first) == keep_free.end()) {
      pivot = it->first;
      break;
    }
  }
  Rational coef = diff.coefficient(pivot);
  ParamExpr rest = diff - ParamExpr::variable(pivot, coef);
  ParamExpr row = rest * (Rational(-1) / coef);

  Mark before = mark();
  std::vector<VarId> dependents;
  for (const auto& [var, expr] : solved_) {
    if (expr.coefficient(pivot) != 0) dependents.push_back(var);
  }
  for (VarId var : dependents) set_row(var, solved_.at(var).substitute(pivot, row));
  set_row(pivot, row);
  if (!inequalities_hold()) {
    rollback(before);
    return Consistency::inconsistent;
  }
  return Consistency::consistent;
}

Consistency ConstraintStore::assert_leq(const ParamExpr& e1, const ParamExpr& e2) {
  ParamExpr diff = resolve(e1 - e2);
  if (diff.is_constant()) {
    return diff.constant() <= 0 ? Consistency::consistent : Consistency::inconsistent;
  }
  inequalities_.push_back(diff);
  trail_.push_back({TrailEntry::Kind::add_inequality});
  return Consistency::deferred;
}

std::vector<ParamExpr> ConstraintStore::deferred() const {
  std::vector<ParamExpr> out;
  for (const auto& ineq : inequalities_) {
    auto r = resolve(ineq);
    if (!r.is_constant()) out.push_back(std::move(r));
  }
  return out;
}

void ConstraintStore::rollback(Mark mark) {
  if (mark > trail_.size()) throw std::logic_error("constraint store mark is in the future");
  while (trail_.size() > mark) {
    TrailEntry entry = std::move(trail_.back());
    trail_.pop_back();
    switch (entry.kind) {
      case TrailEntry::Kind::add_variable:
        vars_.pop_back();
        break;
      case TrailEntry::Kind::set_row:
        if (entry.old_row) {
          solved_[entry.var] = std::move(*entry.old_row);
        } else {
          solved_.erase(entry.var);
        }
        break;
      case TrailEntry::Kind::add_inequality:
        inequalities_.pop_back();
        break;
      case TrailEntry::Kind::set_hint:
        vars_.at(entry.var).hint = std::move(entry.old_hint);
        break;
    }
  }
}

}  // namespace lsd::solid
