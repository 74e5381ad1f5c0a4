#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

namespace fanobound {

using BigInt = mpz_class;

/// Parses a decimal integer with optional leading sign. Throws
/// std::invalid_argument on anything else.
BigInt parse_bigint(std::string_view text);

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; every operation returns a canonical value.
class Rat {
 public:
  Rat() = default;

  template <std::integral T>
  Rat(T value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by design of numeric literals

  Rat(const BigInt& value) : q_(value) {}  // NOLINT
  Rat(const BigInt& num, const BigInt& den);

  /// Accepts "p" or "p/q" (q may be negative; the result is canonicalized).
  static Rat parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigInt floor() const;
  BigInt ceil() const;

  /// Requires is_integer().
  BigInt to_integer() const;

  /// "p" when the denominator is 1, "p/q" otherwise.
  std::string to_string() const;
  /// Always "p/q".
  std::string to_fraction_string() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& rhs);
  Rat& operator-=(const Rat& rhs);
  Rat& operator*=(const Rat& rhs);
  /// Throws std::domain_error on division by zero.
  Rat& operator/=(const Rat& rhs);

  friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
  friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
  friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
  friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rat& lhs, const Rat& rhs) { return cmp(lhs.q_, rhs.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& lhs, const Rat& rhs) {
    const int c = cmp(lhs.q_, rhs.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

 private:
  explicit Rat(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

Rat abs(const Rat& r);
Rat min(const Rat& x, const Rat& y);
Rat max(const Rat& x, const Rat& y);
/// base^exp for exp >= 0.
BigInt ipow(const BigInt& base, unsigned long exp);

}  // namespace fanobound
