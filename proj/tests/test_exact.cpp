#include <doctest.h>

#include "fanobound/affine.hpp"
#include "fanobound/poly.hpp"
#include "fanobound/rational.hpp"
#include "support.hpp"

using namespace fanobound;

namespace {

void check_canonical(const Rat& x) {
  CHECK(x.den() > 0);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), BigInt(abs(x).num()).get_mpz_t(), x.den().get_mpz_t());
  CHECK(g == 1);
}

}  // namespace

TEST_CASE("rat: canonical form after construction and parsing") {
  CHECK(Rat(BigInt(6), BigInt(-4)).to_string() == "-3/2");
  CHECK(Rat::parse("10/-4") == Rat(-5, 2));
  CHECK(Rat::parse("-0/7").to_string() == "0");
  CHECK(Rat(7).to_fraction_string() == "7/1");
  CHECK_THROWS_AS(Rat(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(Rat::parse("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("rat: worked values") {
  const Rat a(1, 60);
  CHECK(Rat(-5) * a == Rat(-1, 12));
  const Rat x(123, 457);
  CHECK(Rat(0) + x == x);
  CHECK(Rat(125, 2) - Rat(3125, 72) == Rat(1375, 72));
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(-7, 2).ceil() == -3);
  CHECK(Rat(1, 3) < Rat(1, 2));
}

TEST_CASE("rat: big values do not overflow") {
  const BigInt big = ipow(BigInt(10), 40);
  const Rat x(big, BigInt(3));
  CHECK((x * 3).to_integer() == big);
  CHECK((x - x).is_zero());
}

TEST_CASE("rat: field axioms and canonical form on random chains") {
  for (int i = 0; i < 500; ++i) {
    const Rat x = testing::random_rat(), y = testing::random_rat(), z = testing::random_rat();
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    Rat chain = x;
    chain += y;
    chain *= z;
    chain -= x;
    if (!y.is_zero()) chain /= y;
    check_canonical(chain);
    if (!x.is_zero()) CHECK(x / x == 1);
    const bool lt = x < y, gt = x > y, eq = x == y;
    CHECK(int(lt) + int(gt) + int(eq) == 1);
  }
}

TEST_CASE("affine_eval: P(3) at the two candidate points") {
  const AffineForm p3{84 * 35, 84, 7};
  CHECK(affine_eval(p3, Rat(1, 360), Rat(-1, 72)) == 14);
  CHECK(affine_eval({2940, 84, 7}, Rat(1, 60), Rat(-1, 12)) == 49);
  const AffineForm f{Rat(3, 7), Rat(-2), Rat(5, 11)};
  CHECK(affine_eval(f, 0, 0) == Rat(5, 11));
}

TEST_CASE("affine: normalization and proportionality") {
  const AffineForm f{2940, 84, 0};
  CHECK(f.normalized() == AffineForm{35, 1, 0});
  CHECK(AffineForm{4, -2, 6}.normalized() == AffineForm{2, -1, 3});
  CHECK(AffineForm{4, 0, 6}.normalized() == AffineForm{1, 0, Rat(3, 2)});
  CHECK(f.positively_proportional({35, 1, 0}));
  CHECK_FALSE(f.positively_proportional({-35, -1, 0}));
  CHECK_FALSE(f.positively_proportional({35, 2, 0}));
}

TEST_CASE("poly: arithmetic, shift and interpolation") {
  const Poly p({9, -6, 1});  // (x - 3)^2
  CHECK(p.degree() == 2);
  CHECK(p(3) == 0);
  CHECK(p.shifted(3) == Poly({0, 0, 1}));
  CHECK((p - p).is_zero());
  CHECK(Poly().degree() == -1);
  CHECK(Poly({1, 2, 0, 0}).degree() == 1);

  const Poly q = Poly::interpolate({{0, 1}, {1, 3}, {2, 7}});
  CHECK(q == Poly({1, 1, 1}));
  CHECK(p.compose(Poly::linear(1, 3)) == Poly({0, 0, 1}));
}

TEST_CASE("poly_nonneg_on_ray: examples") {
  CHECK(poly_nonneg_on_ray(Poly({9, -6, 1}), 3).verdict == RayVerdict::certified_nonneg);
  CHECK(poly_nonneg_on_ray(Poly::constant(-1), 0).verdict == RayVerdict::unknown);
  CHECK(poly_nonneg_on_ray(Poly::constant(-1), 100).verdict == RayVerdict::unknown);
  // a-coefficient of P(m+1) - P(m) is 30(m+1)^4.
  const Poly da = Poly({30, 120, 180, 120, 30});
  CHECK(poly_nonneg_on_ray(da, 3).verdict == RayVerdict::certified_nonneg);
  CHECK(poly_positive_on_ray(Poly({0, 1}), 0).verdict == RayVerdict::unknown);
  CHECK(poly_positive_on_ray(Poly({0, 1}), 1).verdict == RayVerdict::certified_nonneg);
}

TEST_CASE("poly_nonneg_on_ray: soundness on random polynomials") {
  int certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rat> c;
    const int deg = static_cast<int>(testing::uniform(0, 5));
    for (int i = 0; i <= deg; ++i) c.push_back(testing::random_rat(50, 7));
    const Poly p(c);
    const Rat m0 = testing::random_rat(20, 3);
    if (poly_nonneg_on_ray(p, m0).verdict != RayVerdict::certified_nonneg) continue;
    ++certified;
    for (int i = 0; i < 1000; ++i) {
      const Rat x = m0 + abs(testing::random_rat(10000, 97));
      CHECK(p(x) >= 0);
    }
  }
  CHECK(certified > 0);
}
