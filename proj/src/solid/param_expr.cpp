#include "lsd/solid/param_expr.hpp"

namespace lsd::solid {

ParamExpr ParamExpr::variable(VarId var, Rational coefficient) {
  ParamExpr e;
  if (coefficient != 0) e.terms_.emplace(var, std::move(coefficient));
  return e;
}

Rational ParamExpr::coefficient(VarId var) const {
  auto it = terms_.find(var);
  return it == terms_.end() ? Rational(0) : it->second;
}

ParamExpr ParamExpr::substitute(VarId var, const ParamExpr& replacement) const {
  auto it = terms_.find(var);
  if (it == terms_.end()) return *this;
  ParamExpr out = *this;
  Rational coef = it->second;
  out.terms_.erase(var);
  out += replacement * coef;
  return out;
}

ParamExpr& ParamExpr::operator+=(const ParamExpr& other) {
  constant_ += other.constant_;
  for (const auto& [var, coef] : other.terms_) {
    auto [it, inserted] = terms_.emplace(var, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

ParamExpr& ParamExpr::operator-=(const ParamExpr& other) {
  return *this += other * Rational(-1);
}

ParamExpr& ParamExpr::operator*=(const Rational& scale) {
  if (scale == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= scale;
  for (auto& [var, coef] : terms_) coef *= scale;
  return *this;
}

std::string ParamExpr::to_string() const {
  std::string out = lsd::to_string(constant_);
  for (const auto& [var, coef] : terms_) {
    out += " + " + lsd::to_string(coef) + "*v" + std::to_string(var);
  }
  return out;
}

}  // namespace lsd::solid
