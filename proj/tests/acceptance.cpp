#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "fanobound/bounds.hpp"
#include "fanobound/bundle.hpp"
#include "fanobound/certificate.hpp"
#include "fanobound/derive.hpp"
#include "fanobound/hrr.hpp"
#include "fanobound/prop1.hpp"
#include "fanobound/verify.hpp"

using namespace fanobound;
using derive::ConstraintSystem;
using derive::Fact;
using derive::Sense;

namespace {

// Collects sub-check failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::mt19937_64 gen(7351);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

Rat random_a() { return Rat(1, 720) + Rat(BigInt(uniform(0, 2000)), BigInt(uniform(1, 720))); }
Rat random_b() { return Rat(BigInt(uniform(-5000, 5000)), BigInt(uniform(1, 144))); }

void worst_case(Check& ck) {
  const cert::Certificate c = bounds::solve_worst_case();
  ck.expect(c.bound == 16, "bound " + std::to_string(c.bound));
  ck.expect(c.r0 == 3, "r0");
  ck.expect(c.r == std::array<long, 3>{3, 4, 6}, "r");
  ck.expect(verify::verify(c).valid, "certificate rejected");

  cert::Certificate lowered = c;
  lowered.bound = 15;
  ck.expect(!verify::verify(lowered).valid, "bound 15 accepted");

  cert::Certificate negated = c;
  for (auto& s : negated.steps) {
    if (s.rule == "lemma2") {
      s.witness["margin"] = (-cert::rat_from(s.witness["margin"])).to_string();
      break;
    }
  }
  ck.expect(!verify::verify(negated).valid, "negated lemma2 margin accepted");
}

void prop1(Check& ck) {
  const derive::Prop1Report r = derive::prop1_replay();
  ck.expect(r.p3_given_p1[0].bound == 35, "P(1)=0");
  ck.expect(r.p3_given_p1[1].bound == 21, "P(1)=1");
  ck.expect(r.p3_given_p1[2].bound == 7, "P(1)=2");
  ck.expect(r.p2_given_p1_3.bound == 6, "P(1)=3 gives P(2)>=6");
  ck.expect(r.v_forced && r.v_a == Rat(1, 360) && r.v_p3 == 14, "item (v) forced point");
  ck.expect(r.paper_a == Rat(1, 60) && r.paper_p3 == 49, "published point");
  ck.expect(r.v_p3 >= 7 && r.paper_p3 >= 7, "both points satisfy P(3) >= 7");
  ck.expect(r.merged.bound == 7, "merged P(3)");
  bool discrepancy = false;
  for (const auto& e : r.entries) {
    if (e.location == "Prop 1 (v)") discrepancy = e.status == ClaimStatus::discrepancy;
  }
  ck.expect(discrepancy, "item (v) not flagged");
}

void prop2(Check& ck) {
  Fact p3;
  p3.m = 3;
  p3.bound = 7;
  p3.derivation = {"acceptance"};
  const ConstraintSystem cs = bounds::dimension_system({}, p3);
  ck.expect(bounds::minimal_r(cs, 1, 32).m == 3, "dim 1");
  ck.expect(bounds::minimal_r(cs, 2, 32).m == 4, "dim 2");
  ck.expect(bounds::minimal_r(cs, 3, 32).m == 6, "dim 3");
  ck.expect(!bounds::lemma2_worstcase(cs, 5, 2).has_value(), "m=5 r=2 passes");
  const bounds::Lemma2Slack s = bounds::lemma2_slack(cs, 5, 2);
  for (long k = 1; k <= 50; ++k) {
    const Rat a(k, 720);
    ck.expect(s.slack.eval(a, a * -35) == a * -180 + 9, "slack on b = -35a at 720a=" + std::to_string(k));
  }
}

void paper_oracle(Check& ck) {
  const bundle::SplitBundle e = bundle::SplitBundle::example();
  const auto conv = bundle::RankConvention::paper;
  ck.expect(bundle::h0_anti(e, 1, conv) == 91, "h0(-K)");
  ck.expect(bundle::h0_anti(e, 4, conv) == 62909, "h0(-4K)");
  ck.expect(bundle::h0_anti(e, 5, conv) == 186030, "h0(-5K)");
  for (long m = 1; m <= 50; ++m) {
    ck.expect(bundle::h0_anti(e, m, conv) == bundle::paper_closed_form(m), "closed form at m=" + std::to_string(m));
  }
  const cert::Certificate c = bounds::example1_bound(conv);
  ck.expect(c.bound == 15, "bound " + std::to_string(c.bound));
  ck.expect(verify::verify(c).valid, "certificate rejected");
}

BigInt binomial(long n, long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void standard_oracle(Check& ck) {
  for (int trial = 0; trial < 40; ++trial) {
    bundle::SplitBundle b;
    for (long& t : b.twists) t = uniform(-2, 3);
    const long k = uniform(0, 7);
    bundle::TwistMultiset brute;
    std::function<void(int, long, long)> rec = [&](int j, long left, long degree) {
      if (j == 4) {
        brute[degree + left * b.twists[4]] += 1;
        return;
      }
      for (long x = 0; x <= left; ++x) rec(j + 1, left - x, degree + x * b.twists[j]);
    };
    rec(0, k, 0);
    const bundle::TwistMultiset dp = bundle::sym_power_twists(b, k, bundle::RankConvention::standard);
    ck.expect(dp == brute, "DP vs brute force on " + b.to_string() + " k=" + std::to_string(k));
    BigInt rank = 0;
    for (const auto& [d, mult] : dp) rank += mult;
    ck.expect(rank == binomial(k + 4, 4), "rank");
  }
  const bundle::SplitBundle e = bundle::SplitBundle::example();
  const auto conv = bundle::RankConvention::standard;
  const auto [a, b] = hrr::fit_ab({1, bundle::h0_anti(e, 1, conv)}, {2, bundle::h0_anti(e, 2, conv)});
  ck.expect(a * 720 == 6250, "720a");
  for (long m = 3; m <= 10; ++m) {
    ck.expect(hrr::p_affine(m).eval(a, b) == Rat(bundle::h0_anti(e, m, conv)), "fit at m=" + std::to_string(m));
  }
}

void exact_engine(Check& ck) {
  for (int i = 0; i < 200; ++i) {
    const Rat a = Rat(BigInt(uniform(-3000, 3000)), BigInt(uniform(1, 720)));
    const Rat b = random_b();
    ck.expect(hrr::p_affine(0).eval(a, b) == 1, "P(0)");
    for (long m = -20; m <= 20; ++m) {
      if (hrr::p_affine(-m).eval(a, b) != -hrr::p_affine(m - 1).eval(a, b)) {
        ck.expect(false, "antisymmetry at m=" + std::to_string(m));
        break;
      }
    }
  }

  const ConstraintSystem axioms = ConstraintSystem::paper_axioms();
  const AffineForm p3 = hrr::p_affine(3);
  const derive::Minimum min = derive::fm_minimize(axioms, p3);
  ck.expect(min.bounded(), "P(3) bounded");
  int accepted = 0;
  for (int tries = 0; accepted < 1000 && tries < 400000; ++tries) {
    const Rat a = random_a();
    const Rat b = random_b();
    if (!axioms.contains(a, b)) continue;
    ++accepted;
    if (p3.eval(a, b) < min.value) ck.expect(false, "feasible point below the minimum");
  }
  ck.expect(accepted == 1000, "sampled " + std::to_string(accepted) + " feasible points");

  const ConstraintSystem base = ConstraintSystem::base();
  for (int i = 0; i < 300; ++i) {
    Fact f;
    f.m = uniform(0, 9);
    f.bound = Rat(BigInt(uniform(-1000, 1000)), BigInt(uniform(1, 97)));
    f.sense = i % 2 ? Sense::gt : Sense::ge;
    f.derivation = {"acceptance"};
    const Fact g = derive::strengthen_integral(f, base);
    if (g.bound < f.bound) ck.expect(false, "strengthening weakened " + f.to_string());
  }

  const derive::Split split = derive::split_on_p1(axioms, 3);
  int covered = 0;
  for (int tries = 0; covered < 1000 && tries < 200000; ++tries) {
    const long l = uniform(0, 12);
    const Rat a = random_a();
    const Rat b = (Rat(l) - 3 - a * 30) / 6;
    if (!axioms.contains(a, b)) continue;
    ++covered;
    int hits = 0;
    for (const auto& br : split.branches) hits += br.system.contains(a, b);
    if (hits != 1) ck.expect(false, "point in " + std::to_string(hits) + " branches");
  }
  ck.expect(covered == 1000, "split coverage samples");
}

void cli_determinism(Check& ck) {
  using testing::run_cli;
  using testing::scratch;
  using testing::slurp;
  const std::string commands[] = {
      "solve --worst-case --out " + scratch("acc.json"),
      "solve --bundle 0,0,0,0,1 --convention paper --out " + scratch("acc.json"),
      "solve --k5 6250 --k3c2 2750 --out " + scratch("acc.json"),
      "table --k5 6250 --k3c2 2750 --max-m 10 --format json",
      "oracle --bundle 0,0,0,0,1 --m 4 --convention paper",
      "audit --out " + scratch("acc.json"),
  };
  for (const std::string& cmd : commands) {
    const auto first = run_cli(cmd);
    const std::string f1 = slurp(scratch("acc.json"));
    const auto second = run_cli(cmd);
    const std::string f2 = slurp(scratch("acc.json"));
    ck.expect(first.exit_code == 0, cmd + " exit " + std::to_string(first.exit_code));
    ck.expect(first.exit_code == second.exit_code && first.out == second.out && first.err == second.err && f1 == f2,
              cmd + " differs between runs");
  }
  const auto s = run_cli("solve --worst-case --out " + scratch("acc.json"));
  ck.expect(s.out == "16\n", "solve printed " + s.out);
  ck.expect(run_cli("verify " + scratch("acc.json")).exit_code == 0, "verify rejected the CLI certificate");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"AC1 worst-case bound 16 with a verifiable certificate", worst_case},
      {"AC2 P(3) >= 7 case replay and the (v) discrepancy", prop1},
      {"AC3 minimal m = 3, 4, 6 and the m = 5 counterexample", prop2},
      {"AC4 paper-convention oracle and example bound 15", paper_oracle},
      {"AC5 standard-convention oracle agrees with Riemann-Roch", standard_oracle},
      {"AC6 exact engine properties", exact_engine},
      {"AC7 CLI output is byte-for-byte deterministic", cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Check ck;
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = ck.failures.empty();
    failed += !ok;
    std::printf("%s %s", ok ? "PASS" : "FAIL", c.name);
    if (!ok) std::printf(" (%s%s)", ck.failures.front().c_str(), ck.failures.size() > 1 ? ", ..." : "");
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
