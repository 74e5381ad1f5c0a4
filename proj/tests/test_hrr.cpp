#include <doctest.h>

#include "fanobound/hrr.hpp"
#include "support.hpp"

using namespace fanobound;
using namespace fanobound::hrr;

TEST_CASE("p_affine: coefficients") {
  CHECK(p_affine(3) == AffineForm{2940, 84, 7});
  CHECK(p_affine(0) == AffineForm{0, 0, 1});
  CHECK(p_affine(4) == AffineForm{9 * 20 * 59, 180, 9});
  CHECK(p_affine(1) == AffineForm{30, 6, 3});
  CHECK(p_affine(6) == AffineForm{68250, 546, 13});
}

TEST_CASE("p_affine: P(m) + P(-1-m) = 0 and P(0) = 1") {
  for (long m = -20; m <= 20; ++m) {
    CHECK(p_affine(m) + p_affine(-1 - m) == AffineForm{0, 0, 0});
  }
  CHECK(p_affine(0) == AffineForm::constant_form(1));
}

TEST_CASE("p_affine: (2m+1) times the bracket") {
  for (int i = 0; i < 50; ++i) {
    const Rat a = abs(testing::random_rat()), b = testing::random_rat();
    for (long m = 0; m <= 12; ++m) {
      const Rat q = Rat(m * (m + 1)) * (Rat(3 * m * m + 3 * m - 1) * a + b) + 1;
      CHECK(p_affine(m).eval(a, b) == Rat(2 * m + 1) * q);
    }
  }
}

TEST_CASE("p_polys agree with p_affine") {
  const HrrPolys& p = p_polys();
  for (long m = -5; m <= 30; ++m) {
    const AffineForm f = p_affine(m);
    CHECK(p.coeff_a(m) == f.coeff_a);
    CHECK(p.coeff_b(m) == f.coeff_b);
    CHECK(p.constant(m) == f.constant);
  }
}

TEST_CASE("p_eval and p_table on the example data") {
  const ChernData c(6250, 2750);
  CHECK(p_eval(c, 0) == 1);
  CHECK(p_eval(c, 1) == 378);
  CHECK(p_eval(c, 2) == 5005);
  CHECK(p_eval(c, 3) == 27132);
  CHECK(p_eval(c, 5) == 261261);
  const auto table = p_table(c, 2);
  REQUIRE(table.size() == 3);
  CHECK(table[2] == PValue{2, 5005});
  CHECK(p_table(ChernData(1, 0), 0) == std::vector<PValue>{{0, 1}});
}

TEST_CASE("p_eval: inconsistent data is reported") {
  CHECK_THROWS_AS(ChernData(0, 0), std::invalid_argument);
  // a = 1/720, b = 0: P(1) = 30/720 + 3 is not an integer.
  try {
    p_eval(ChernData(1, 0), 1);
    FAIL("expected ChernDataError");
  } catch (const ChernDataError& e) {
    CHECK(e.kind() == ChernDataError::Kind::non_integral);
    CHECK(e.m() == 1);
  }
  // a = 1/360, b = -1/72 passes m = 1..3 (P = 3, 6, 14) but P(1) = 3 is fine.
  const ChernData v(2, -2);
  CHECK(p_eval(v, 1) == 3);
  CHECK(p_eval(v, 2) == 6);
  CHECK(p_eval(v, 3) == 14);
  // Very negative k3c2 makes P(1) negative.
  try {
    p_eval(ChernData(720, -144 * 10), 1);
    FAIL("expected ChernDataError");
  } catch (const ChernDataError& e) {
    CHECK(e.kind() == ChernDataError::Kind::negative);
  }
}

TEST_CASE("fit_ab: examples") {
  auto [a, b] = fit_ab({1, 378}, {2, 5005});
  CHECK(a == Rat(625, 72));
  CHECK(b == Rat(1375, 72));
  CHECK(a * 720 == 6250);

  const Rat a0 = 0, b0(-1, 2);
  auto [a1, b1] = fit_ab({1, p_affine(1).eval(a0, b0).to_integer()}, {2, p_affine(2).eval(a0, b0).to_integer()});
  CHECK(a1 == a0);
  CHECK(b1 == b0);

  auto [a2, b2] = fit_ab({1, 3}, {2, 6});
  CHECK(a2 == Rat(1, 360));
  CHECK(b2 == Rat(-1, 72));
}

TEST_CASE("fit_ab: singular pairs") {
  CHECK_THROWS_AS(fit_ab({0, 1}, {2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(fit_ab({-1, 0}, {2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(fit_ab({2, 5}, {2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(fit_ab({1, 3}, {-2, -3}), std::invalid_argument);
}

TEST_CASE("fit_ab: round trip on random Chern data") {
  // 720 | k5 and 144 | k3c2 keep every P(m) integral.
  for (int i = 0; i < 200; ++i) {
    const ChernData c(720 * testing::uniform(1, 1000), 144 * testing::uniform(-1000, 1000));
    const long m1 = testing::uniform(1, 8), m2 = m1 + testing::uniform(1, 8);
    const auto [a, b] = fit_ab({m1, p_affine(m1).eval(c.a(), c.b()).to_integer()},
                               {m2, p_affine(m2).eval(c.a(), c.b()).to_integer()});
    CHECK(a == c.a());
    CHECK(b == c.b());
  }
  const ChernData e(6250, 2750);
  const auto [a, b] = fit_ab({1, p_eval(e, 1)}, {2, p_eval(e, 2)});
  CHECK(a == e.a());
  CHECK(b == e.b());
}
