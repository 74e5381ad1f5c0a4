#include "fanobound/hrr.hpp"

#include <string>

namespace fanobound::hrr {

namespace {

std::string describe(ChernDataError::Kind kind, long m, const Rat& value) {
  const std::string what = kind == ChernDataError::Kind::non_integral
                               ? "non-integral P(m): inconsistent Chern data"
                               : "negative P(m) for m >= 0: violates vanishing";
  return what + " (m=" + std::to_string(m) + ", P(m)=" + value.to_string() + ")";
}

}  // namespace

ChernData::ChernData(BigInt k5_value, BigInt k3c2_value)
    : k5(std::move(k5_value)), k3c2(std::move(k3c2_value)) {
  if (k5 < 1) throw std::invalid_argument("(-K)^5 must be >= 1 for nef and big -K");
}

ChernDataError::ChernDataError(Kind kind, long m, const Rat& value)
    : std::domain_error(describe(kind, m, value)), kind_(kind), m_(m) {}

AffineForm p_affine(long m) {
  const BigInt mm(m);
  const BigInt odd = 2 * mm + 1;
  const BigInt pair = BigInt(mm * (mm + 1));
  const BigInt quad = BigInt(3 * mm * mm + 3 * mm - 1);
  return {Rat(BigInt(odd * pair * quad)), Rat(BigInt(odd * pair)), Rat(odd)};
}

const HrrPolys& p_polys() {
  static const HrrPolys polys = [] {
    const Poly m = Poly::identity();
    const Poly odd = Poly::linear(2, 1);
    const Poly pair = m * Poly::linear(1, 1);
    const Poly quad({Rat(-1), Rat(3), Rat(3)});
    return HrrPolys{odd * pair * quad, odd * pair, odd};
  }();
  return polys;
}

Poly p_poly(const Rat& a, const Rat& b) {
  const HrrPolys& p = p_polys();
  return p.coeff_a * a + p.coeff_b * b + p.constant;
}

BigInt p_eval(const ChernData& c, long m) {
  const Rat value = p_affine(m).eval(c.a(), c.b());
  if (!value.is_integer()) throw ChernDataError(ChernDataError::Kind::non_integral, m, value);
  if (m >= 0 && value.sign() < 0) throw ChernDataError(ChernDataError::Kind::negative, m, value);
  return value.to_integer();
}

std::vector<PValue> p_table(const ChernData& c, long m_max) {
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
  std::vector<PValue> out;
  out.reserve(static_cast<std::size_t>(m_max) + 1);
  for (long m = 0; m <= m_max; ++m) out.push_back({m, p_eval(c, m)});
  return out;
}

std::pair<Rat, Rat> fit_ab(const PValue& v1, const PValue& v2) {
  const AffineForm r1 = p_affine(v1.m);
  const AffineForm r2 = p_affine(v2.m);
  const Rat det = r1.coeff_a * r2.coeff_b - r2.coeff_a * r1.coeff_b;
  if (det.is_zero()) {
    throw std::invalid_argument("singular fit: m=" + std::to_string(v1.m) + " and m=" +
                                std::to_string(v2.m) + " give proportional rows");
  }
  const Rat y1 = Rat(v1.value) - r1.constant;
  const Rat y2 = Rat(v2.value) - r2.constant;
  const Rat a = (y1 * r2.coeff_b - y2 * r1.coeff_b) / det;
  const Rat b = (r1.coeff_a * y2 - r2.coeff_a * y1) / det;
  return {a, b};
}

}  // namespace fanobound::hrr
