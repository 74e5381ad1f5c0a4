#include <doctest.h>

#include <functional>

#include "fanobound/bundle.hpp"
#include "fanobound/hrr.hpp"
#include "support.hpp"

using namespace fanobound;
using namespace fanobound::bundle;

namespace {

BigInt binomial(long n, long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// Every multi-index alpha with |alpha| = k, degree sum(alpha_j e_j).
TwistMultiset brute_force(const SplitBundle& b, long k) {
  TwistMultiset out;
  std::function<void(int, long, long)> rec = [&](int j, long left, long degree) {
    if (j == 4) {
      out[degree + left * b.twists[4]] += 1;
      return;
    }
    for (long x = 0; x <= left; ++x) rec(j + 1, left - x, degree + x * b.twists[j]);
  };
  rec(0, k, 0);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

BigInt total(const TwistMultiset& t) {
  BigInt s = 0;
  for (const auto& [d, mult] : t) s += mult;
  return s;
}

}  // namespace

TEST_CASE("h0_p1") {
  CHECK(h0_p1(3) == 4);
  CHECK(h0_p1(-1) == 0);
  CHECK(h0_p1(-7) == 0);
  CHECK(h0_p1(1 + 0) == 2);
}

TEST_CASE("anticanonical_data and volume") {
  CHECK(anticanonical_data(SplitBundle::example()).h_coeff == 1);
  CHECK(anticanonical_data(SplitBundle::example()).l_coeff == 5);
  CHECK(anticanonical_data(SplitBundle{{0, 0, 0, 0, 0}}).h_coeff == 2);
  CHECK(anticanonical_data(SplitBundle{{1, 1, 1, 1, 1}}).h_coeff == -3);
  CHECK(anticanonical_volume(SplitBundle::example()) == 6250);
  CHECK(anticanonical_volume(SplitBundle{{0, 0, 0, 0, 0}}) == 6250);
}

TEST_CASE("sym_power_twists: examples") {
  const TwistMultiset s = sym_power_twists(SplitBundle::example(), 5, RankConvention::standard);
  CHECK(s == TwistMultiset{{0, 56}, {1, 35}, {2, 20}, {3, 10}, {4, 4}, {5, 1}});
  const TwistMultiset p = sym_power_twists(SplitBundle::example(), 5, RankConvention::paper);
  CHECK(p == TwistMultiset{{0, 20}, {1, 10}, {2, 4}, {3, 1}});
  CHECK(sym_power_twists(SplitBundle{{0, 0, 0, 0, 0}}, 2, RankConvention::standard) == TwistMultiset{{0, 15}});
  CHECK_THROWS_AS(sym_power_twists(SplitBundle{{0, 0, 0, 1, 1}}, 5, RankConvention::paper), UnsupportedConvention);
  CHECK_THROWS_AS(sym_power_twists(SplitBundle::example(), -1, RankConvention::standard), std::invalid_argument);
}

TEST_CASE("sym_power_twists: DP matches brute force and has total rank C(k+4, 4)") {
  for (int trial = 0; trial < 60; ++trial) {
    SplitBundle b;
    for (long& e : b.twists) e = testing::uniform(-2, 3);
    const long k = testing::uniform(0, 8);
    const TwistMultiset dp = sym_power_twists(b, k, RankConvention::standard);
    CHECK(dp == brute_force(b, k));
    CHECK(total(dp) == binomial(k + 4, 4));
  }
}

TEST_CASE("h0_anti: examples") {
  const SplitBundle e = SplitBundle::example();
  CHECK(h0_anti(e, 1, RankConvention::paper) == 91);
  CHECK(h0_anti(e, 4, RankConvention::paper) == 62909);
  CHECK(h0_anti(e, 5, RankConvention::paper) == 186030);
  CHECK(h0_anti(e, 1, RankConvention::standard) == 378);
  BigInt expected = 0;
  for (long i = 0; i <= 5; ++i) expected += binomial(8 - i, 3) * h0_p1(i + 1);
  CHECK(h0_anti(e, 1, RankConvention::standard) == expected);
  CHECK(h0_anti(SplitBundle{{0, 0, 0, 0, 0}}, 1, RankConvention::standard) == binomial(9, 4) * 3);
  CHECK_THROWS_AS(h0_anti(e, 0, RankConvention::standard), std::invalid_argument);
}

TEST_CASE("h0_anti: vanishing guard") {
  CHECK(h0_anti_checked(SplitBundle::example(), 3, RankConvention::standard).vanishing_guaranteed);
  const H0Result r = h0_anti_checked(SplitBundle{{-2, -2, 3, 3, 3}}, 1, RankConvention::standard);
  CHECK_FALSE(r.vanishing_guaranteed);
  CHECK(r.value >= 0);
}

TEST_CASE("paper_closed_form") {
  CHECK(paper_closed_form(1) == 91);
  CHECK(paper_closed_form(4) == 62909);
  CHECK(paper_closed_form(5) == 186030);
  CHECK_THROWS_AS(paper_closed_form(0), std::invalid_argument);
  for (long m = 1; m <= 20; ++m) CHECK(paper_closed_form_poly()(m) == Rat(paper_closed_form(m)));
}

TEST_CASE("paper convention sum equals the closed form for m = 1..50") {
  for (long m = 1; m <= 50; ++m) {
    CHECK(h0_anti(SplitBundle::example(), m, RankConvention::paper) == paper_closed_form(m));
  }
}

TEST_CASE("standard convention fits Riemann-Roch on the example bundle") {
  const SplitBundle e = SplitBundle::example();
  const auto [a, b] = hrr::fit_ab({1, h0_anti(e, 1, RankConvention::standard)}, {2, h0_anti(e, 2, RankConvention::standard)});
  CHECK(a * 720 == 6250);
  CHECK(b * 144 == 2750);
  for (long m = 3; m <= 10; ++m) {
    CHECK(hrr::p_affine(m).eval(a, b) == Rat(h0_anti(e, m, RankConvention::standard)));
  }
  CHECK(hrr::p_affine(0).eval(a, b) == 1);
}

TEST_CASE("fitted (-K)^5 equals intersection theory for (0,0,0,0,e), e = 0, 1, 2") {
  for (long e = 0; e <= 2; ++e) {
    const SplitBundle b{{0, 0, 0, 0, e}};
    const auto [fa, fb] = hrr::fit_ab({1, h0_anti(b, 1, RankConvention::standard)}, {2, h0_anti(b, 2, RankConvention::standard)});
    CHECK(fa * 720 == Rat(anticanonical_volume(b)));
    for (long m = 3; m <= 6; ++m) CHECK(hrr::p_affine(m).eval(fa, fb) == Rat(h0_anti(b, m, RankConvention::standard)));
  }
}

TEST_CASE("consistency_audit on the example bundle") {
  const AuditReport r = consistency_audit(SplitBundle::example(), 10);
  REQUIRE(r.size() == 4);
  CHECK(r[0].status == ClaimStatus::confirmed);  // (-K)^5
  CHECK(r[1].status == ClaimStatus::confirmed);  // summation = closed form
  CHECK(r[2].status == ClaimStatus::confirmed);  // standard vs Riemann-Roch
  CHECK(r[3].status == ClaimStatus::discrepancy);
  CHECK(r[2].engine_result.find("720a=6250") != std::string::npos);
  CHECK_THROWS_AS(consistency_audit(SplitBundle::example(), 0), std::invalid_argument);
}
