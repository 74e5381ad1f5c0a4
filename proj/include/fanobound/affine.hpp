#pragma once

#include <ostream>
#include <string>

#include "fanobound/rational.hpp"

namespace fanobound {

/// coeff_a * a + coeff_b * b + constant, over the two Riemann-Roch
/// parameters a = (-K)^5 / 720 and b = (-K)^3.c2 / 144.
struct AffineForm {
  Rat coeff_a;
  Rat coeff_b;
  Rat constant;

  static AffineForm var_a() { return {1, 0, 0}; }
  static AffineForm var_b() { return {0, 1, 0}; }
  static AffineForm constant_form(const Rat& c) { return {0, 0, c}; }

  Rat eval(const Rat& a, const Rat& b) const { return coeff_a * a + coeff_b * b + constant; }
  bool is_constant() const { return coeff_a.is_zero() && coeff_b.is_zero(); }

  /// Positive rescaling so the b coefficient is +-1, or failing that the a
  /// coefficient, or failing that the constant. The zero form is unchanged.
  AffineForm normalized() const;

  /// True iff *this == s * other for some s > 0.
  bool positively_proportional(const AffineForm& other) const;

  std::string to_string() const;

  AffineForm operator-() const { return {-coeff_a, -coeff_b, -constant}; }
  AffineForm& operator+=(const AffineForm& rhs);
  AffineForm& operator-=(const AffineForm& rhs);
  AffineForm& operator*=(const Rat& s);

  friend AffineForm operator+(AffineForm lhs, const AffineForm& rhs) { return lhs += rhs; }
  friend AffineForm operator-(AffineForm lhs, const AffineForm& rhs) { return lhs -= rhs; }
  friend AffineForm operator*(AffineForm lhs, const Rat& s) { return lhs *= s; }
  friend AffineForm operator*(const Rat& s, AffineForm rhs) { return rhs *= s; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend std::ostream& operator<<(std::ostream& os, const AffineForm& f) { return os << f.to_string(); }
};

/// Exact value of f at (a, b).
inline Rat affine_eval(const AffineForm& f, const Rat& a, const Rat& b) { return f.eval(a, b); }

}  // namespace fanobound
