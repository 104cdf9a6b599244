#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lsd/rational.hpp"

namespace lsd::solid {

using VarId = std::uint32_t;

// Affine form constant + sum(coef * var). Zero coefficients are never stored,
// so structural equality is semantic equality.
class ParamExpr {
 public:
  ParamExpr() = default;
  ParamExpr(Rational constant) : constant_(std::move(constant)) {}  // NOLINT: implicit by intent
  ParamExpr(int constant) : constant_(constant) {}                    // NOLINT

  static ParamExpr variable(VarId var, Rational coefficient = 1);

  const Rational& constant() const { return constant_; }
  const std::map<VarId, Rational>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  Rational coefficient(VarId var) const;

  // Replaces var by replacement everywhere it occurs.
  ParamExpr substitute(VarId var, const ParamExpr& replacement) const;

  ParamExpr& operator+=(const ParamExpr& other);
  ParamExpr& operator-=(const ParamExpr& other);
  ParamExpr& operator*=(const Rational& scale);

  friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) { return a += b; }
  friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) { return a -= b; }
  friend ParamExpr operator*(ParamExpr a, const Rational& s) { return a *= s; }
  friend ParamExpr operator*(const Rational& s, ParamExpr a) { return a *= s; }
  friend ParamExpr operator-(ParamExpr a) { return a *= Rational(-1); }

  bool operator==(const ParamExpr& other) const = default;

  std::string to_string() const;

 private:
  Rational constant_{0};
  std::map<VarId, Rational> terms_;
};

}  // namespace lsd::solid
