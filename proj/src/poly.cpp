#include "fanobound/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace fanobound {

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly({c}); }

Poly Poly::identity() { return Poly({Rat(0), Rat(1)}); }

Poly Poly::linear(const Rat& slope, const Rat& intercept) { return Poly({intercept, slope}); }

Poly Poly::interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
  const std::size_t n = points.size();
  // Divided differences, in place.
  std::vector<Rat> dd;
  dd.reserve(n);
  for (const auto& [x, y] : points) dd.push_back(y);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rat span = points[i].first - points[i - level].first;
      if (span.is_zero()) throw std::invalid_argument("interpolation abscissae must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / span;
    }
  }
  Poly out;
  Poly basis = constant(1);
  for (std::size_t i = 0; i < n; ++i) {
    out += basis * dd[i];
    basis *= linear(1, -points[i].first);
  }
  return out;
}

Rat Poly::operator()(const Rat& x) const {
  Rat acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::shifted(const Rat& s) const {
  std::vector<Rat> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += s * c[j];
  }
  return Poly(std::move(c));
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + constant(*it);
  return acc;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly& Poly::operator*=(const Poly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rat> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rat& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RayCheck poly_nonneg_on_ray(const Poly& p, const Rat& m0) {
  RayCheck out;
  out.shifted = p.shifted(m0);
  const auto& c = out.shifted.coeffs();
  const bool ok = std::all_of(c.begin(), c.end(), [](const Rat& x) { return x.sign() >= 0; });
  out.verdict = ok ? RayVerdict::certified_nonneg : RayVerdict::unknown;
  return out;
}

RayCheck poly_positive_on_ray(const Poly& p, const Rat& m0) {
  RayCheck out = poly_nonneg_on_ray(p, m0);
  if (out.shifted.coeff(0).sign() <= 0) out.verdict = RayVerdict::unknown;
  return out;
}

}  // namespace fanobound
