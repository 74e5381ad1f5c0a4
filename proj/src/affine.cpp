#include "fanobound/affine.hpp"

namespace fanobound {

AffineForm AffineForm::normalized() const {
  Rat pivot;
  if (!coeff_b.is_zero()) {
    pivot = coeff_b;
  } else if (!coeff_a.is_zero()) {
    pivot = coeff_a;
  } else if (!constant.is_zero()) {
    pivot = constant;
  } else {
    return *this;
  }
  return *this * (Rat(1) / abs(pivot));
}

bool AffineForm::positively_proportional(const AffineForm& other) const {
  const AffineForm x = normalized();
  const AffineForm y = other.normalized();
  return x == y;
}

std::string AffineForm::to_string() const {
  std::string out;
  auto term = [&out](const Rat& c, const char* var) {
    if (c.is_zero()) return;
    if (!out.empty()) out += c.sign() > 0 ? " + " : " - ";
    else if (c.sign() < 0) out += "-";
    const Rat mag = abs(c);
    if (*var == '\0') {
      out += mag.to_string();
    } else {
      if (mag != 1) out += mag.to_string() + "*";
      out += var;
    }
  };
  term(coeff_a, "a");
  term(coeff_b, "b");
  term(constant, "");
  return out.empty() ? "0" : out;
}

AffineForm& AffineForm::operator+=(const AffineForm& rhs) {
  coeff_a += rhs.coeff_a;
  coeff_b += rhs.coeff_b;
  constant += rhs.constant;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& rhs) {
  coeff_a -= rhs.coeff_a;
  coeff_b -= rhs.coeff_b;
  constant -= rhs.constant;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rat& s) {
  coeff_a *= s;
  coeff_b *= s;
  constant *= s;
  return *this;
}

}  // namespace fanobound
