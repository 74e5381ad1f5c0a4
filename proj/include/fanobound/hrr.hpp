#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fanobound/affine.hpp"
#include "fanobound/poly.hpp"
#include "fanobound/rational.hpp"

namespace fanobound::hrr {

/// Intersection numbers of a smooth 5-fold with nef and big -K.
struct ChernData {
  BigInt k5;    ///< (-K)^5, must be >= 1
  BigInt k3c2;  ///< (-K)^3 . c2

  /// Throws std::invalid_argument when k5 < 1.
  ChernData(BigInt k5_value, BigInt k3c2_value);

  Rat a() const { return Rat(k5, 720); }
  Rat b() const { return Rat(k3c2, 144); }

  friend bool operator==(const ChernData&, const ChernData&) = default;
};

struct PValue {
  long m = 0;
  BigInt value;

  friend bool operator==(const PValue&, const PValue&) = default;
};

/// Raised by p_eval when the Chern pair cannot come from a 5-fold of this
/// class: P(m) not an integer, or P(m) < 0 for some m >= 0.
class ChernDataError : public std::domain_error {
 public:
  enum class Kind { non_integral, negative };

  ChernDataError(Kind kind, long m, const Rat& value);

  Kind kind() const { return kind_; }
  long m() const { return m_; }

 private:
  Kind kind_;
  long m_;
};

/// P(m) = (2m+1) m(m+1)(3m^2+3m-1) a + (2m+1) m(m+1) b + (2m+1).
/// Defined for every integer m, including negative ones.
AffineForm p_affine(long m);

/// The three coefficient functions of p_affine as polynomials in m.
struct HrrPolys {
  Poly coeff_a;
  Poly coeff_b;
  Poly constant;
};
const HrrPolys& p_polys();

/// P as a polynomial in m once (a, b) are fixed.
Poly p_poly(const Rat& a, const Rat& b);

/// Exact P(m) for the given data. For m >= 0 the value must be a
/// nonnegative integer; for m < 0 only integrality is checked.
BigInt p_eval(const ChernData& c, long m);

/// P(0), ..., P(m_max). Propagates ChernDataError for the first bad m.
std::vector<PValue> p_table(const ChernData& c, long m_max);

/// The unique (a, b) with P(v1.m) = v1.value and P(v2.m) = v2.value.
/// Throws std::invalid_argument when the two rows are proportional
/// (m in {0, -1}, equal m, or m2 = -1 - m1).
std::pair<Rat, Rat> fit_ab(const PValue& v1, const PValue& v2);

}  // namespace fanobound::hrr
