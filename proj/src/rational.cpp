#include "fanobound/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fanobound {

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad integer literal: " + std::string(text));
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad integer literal: " + std::string(text));
  }
  // mpz_class rejects a leading '+'.
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

Rat::Rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_bigint(text));
  return Rat(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

BigInt Rat::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

BigInt Rat::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

BigInt Rat::to_integer() const {
  if (!is_integer()) throw std::domain_error("not an integer: " + to_string());
  return q_.get_num();
}

std::string Rat::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return to_fraction_string();
}

std::string Rat::to_fraction_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat Rat::operator-() const { return Rat(mpq_class(-q_)); }

Rat& Rat::operator+=(const Rat& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rat& Rat::operator-=(const Rat& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rat& Rat::operator*=(const Rat& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rat& Rat::operator/=(const Rat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& x, const Rat& y) { return y < x ? y : x; }
Rat max(const Rat& x, const Rat& y) { return x < y ? y : x; }

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace fanobound
