#pragma once

#include <utility>
#include <vector>

#include "fanobound/rational.hpp"

namespace fanobound {

/// Univariate polynomial over the rationals. coeffs()[i] multiplies x^i;
/// trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);

  static Poly constant(const Rat& c);
  /// The polynomial x.
  static Poly identity();
  /// x + c
  static Poly linear(const Rat& slope, const Rat& intercept);

  /// Newton interpolation through distinct abscissae.
  static Poly interpolate(const std::vector<std::pair<Rat, Rat>>& points);

  const std::vector<Rat>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

  Rat operator()(const Rat& x) const;

  /// p(x + s), computed by repeated synthetic division.
  Poly shifted(const Rat& s) const;
  /// p(q(x))
  Poly compose(const Poly& q) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rat& s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
  friend Poly operator*(Poly lhs, const Rat& s) { return lhs *= s; }
  friend Poly operator*(const Rat& s, Poly rhs) { return rhs *= s; }
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();

  std::vector<Rat> coeffs_;
};

enum class RayVerdict { certified_nonneg, unknown };

struct RayCheck {
  RayVerdict verdict = RayVerdict::unknown;
  /// p(m0 + t) as a polynomial in t.
  Poly shifted;
};

/// Sufficient test for p >= 0 on [m0, inf): every coefficient of p(m0 + t)
/// is nonnegative. Never certifies a polynomial that dips below zero.
RayCheck poly_nonneg_on_ray(const Poly& p, const Rat& m0);

/// As poly_nonneg_on_ray, additionally requiring p(m0) > 0, which gives
/// p > 0 on the whole ray.
RayCheck poly_positive_on_ray(const Poly& p, const Rat& m0);

}  // namespace fanobound
