#include "fanobound/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "fanobound/hrr.hpp"

namespace fanobound::bundle {

namespace {

// Index of the single possibly-nontrivial summand if the bundle has the
// shape O^4 + O(e), otherwise -1.
int example_shape_index(const SplitBundle& b) {
  const auto zeros = std::count(b.twists.begin(), b.twists.end(), 0L);
  if (zeros == 5) return 4;
  if (zeros != 4) return -1;
  for (int i = 0; i < 5; ++i) {
    if (b.twists[i] != 0) return i;
  }
  return -1;
}

// Counts multi-indices alpha with |alpha| = k by (count used, degree),
// one unbounded-knapsack pass per summand.
TwistMultiset standard_twists(const SplitBundle& b, long k) {
  const long lo = std::min(0L, *std::min_element(b.twists.begin(), b.twists.end()));
  const long hi = std::max(0L, *std::max_element(b.twists.begin(), b.twists.end()));
  const long dmin = k * lo;
  const std::size_t width = static_cast<std::size_t>(k * (hi - lo) + 1);
  const std::size_t rows = static_cast<std::size_t>(k + 1);
  std::vector<BigInt> table(rows * width);
  auto at = [&](long j, long d) -> BigInt& {
    return table[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(d - dmin)];
  };
  at(0, 0) = 1;
  for (long e : b.twists) {
    for (long j = 1; j <= k; ++j) {
      const long dlo = std::max(dmin, j * lo);
      const long dhi = std::min(dmin + static_cast<long>(width) - 1, j * hi);
      for (long d = dlo; d <= dhi; ++d) {
        const long prev = d - e;
        if (prev < (j - 1) * lo || prev > (j - 1) * hi) continue;
        const BigInt& add = at(j - 1, prev);
        if (add != 0) at(j, d) += add;
      }
    }
  }
  TwistMultiset out;
  for (long d = k * lo; d <= k * hi; ++d) {
    if (at(k, d) != 0) out[d] = at(k, d);
  }
  return out;
}

TwistMultiset printed_twists(const SplitBundle& b, long k) {
  const int idx = example_shape_index(b);
  if (idx < 0) {
    throw UnsupportedConvention("paper rank convention needs a bundle of shape (0,0,0,0,e), got " +
                                b.to_string());
  }
  const long e = b.twists[idx];
  TwistMultiset out;
  for (long i = 0; i <= k; ++i) {
    const BigInt r = k - i;
    BigInt mult = BigInt((r - 1) * r * (r + 1)) / 6;
    if (mult <= 0) continue;
    out[i * e] += mult;
  }
  return out;
}

std::string join_values(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s;
}

}  // namespace

long SplitBundle::degree() const { return std::accumulate(twists.begin(), twists.end(), 0L); }

std::string SplitBundle::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < twists.size(); ++i) s += (i ? "," : "") + std::to_string(twists[i]);
  return s + ")";
}

const char* to_string(RankConvention c) { return c == RankConvention::paper ? "paper" : "standard"; }

RankConvention parse_convention(const std::string& text) {
  if (text == "standard") return RankConvention::standard;
  if (text == "paper") return RankConvention::paper;
  throw std::invalid_argument("unknown rank convention: " + text);
}

BigInt h0_p1(long d) { return d >= -1 ? BigInt(d + 1) : BigInt(0); }

AnticanonicalData anticanonical_data(const SplitBundle& b) { return {5, 2 - b.degree()}; }

BigInt anticanonical_volume(const SplitBundle& b) {
  const AnticanonicalData ac = anticanonical_data(b);
  // (l L + h H)^5 with H^2 = 0: l^5 L^5 + 5 l^4 h L^4.H.
  const BigInt l = ac.l_coeff;
  return BigInt(ipow(l, 5) * b.degree() + 5 * ipow(l, 4) * ac.h_coeff);
}

TwistMultiset sym_power_twists(const SplitBundle& b, long k, RankConvention conv) {
  if (k < 0) throw std::invalid_argument("symmetric power degree must be >= 0");
  return conv == RankConvention::paper ? printed_twists(b, k) : standard_twists(b, k);
}

H0Result h0_anti_checked(const SplitBundle& b, long m, RankConvention conv) {
  if (m < 1) throw std::invalid_argument("h0_anti needs m >= 1");
  const long shift = m * anticanonical_data(b).h_coeff;
  H0Result out;
  for (const auto& [d, mult] : sym_power_twists(b, 5 * m, conv)) {
    if (d + shift < -1) out.vanishing_guaranteed = false;
    out.value += mult * h0_p1(d + shift);
  }
  return out;
}

BigInt h0_anti(const SplitBundle& b, long m, RankConvention conv) {
  return h0_anti_checked(b, m, conv).value;
}

BigInt paper_closed_form(long m) {
  if (m < 1) throw std::invalid_argument("closed form needs m >= 1");
  const BigInt x = m;
  const BigInt product = x * (5 * x - 1) * (5 * x + 1) * (5 * x + 2) * (10 * x + 3);
  if (product % 24 != 0) throw std::logic_error("closed form not divisible by 24");
  return BigInt(product / 24);
}

Poly paper_closed_form_poly() {
  Poly p = Poly::identity();
  p *= Poly::linear(5, -1);
  p *= Poly::linear(5, 1);
  p *= Poly::linear(5, 2);
  p *= Poly::linear(10, 3);
  return p * Rat(1, 24);
}

AuditReport consistency_audit(const SplitBundle& b, long m_max) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  AuditReport out;
  const BigInt volume = anticanonical_volume(b);
  const std::string tag = "Example 1 " + b.to_string() + ": ";

  out.push_back({tag + "(-K)^5", "(-K)^5 = 2 x 5^5 = 6250",
                 "intersection theory gives " + volume.get_str(),
                 volume == 6250 ? ClaimStatus::confirmed : ClaimStatus::discrepancy});

  const bool printed_ok = example_shape_index(b) >= 0;
  std::vector<BigInt> printed;
  if (printed_ok) {
    for (long m = 1; m <= m_max; ++m) printed.push_back(h0_anti(b, m, RankConvention::paper));
  }

  // (1) printed summation against the printed closed form.
  if (printed_ok && b == SplitBundle::example()) {
    long first_bad = 0;
    for (long m = 1; m <= m_max && first_bad == 0; ++m) {
      if (printed[m - 1] != paper_closed_form(m)) first_bad = m;
    }
    out.push_back({tag + "summation = closed form",
                   "sum_i (m+i+1)(5m-i-1)(5m-i)(5m-i+1)/6 = m(5m-1)(5m+1)(5m+2)(10m+3)/24",
                   first_bad == 0 ? "identical for m = 1.." + std::to_string(m_max)
                                  : "differ first at m=" + std::to_string(first_bad),
                   first_bad == 0 ? ClaimStatus::confirmed : ClaimStatus::discrepancy});
  }

  // (2) standard convention against the Riemann-Roch shape.
  {
    std::vector<BigInt> values;
    for (long m = 1; m <= std::max(m_max, 2L); ++m) values.push_back(h0_anti(b, m, RankConvention::standard));
    const auto [a, b_param] = hrr::fit_ab({1, values[0]}, {2, values[1]});
    long first_bad = 0;
    for (long m = 3; m <= m_max && first_bad == 0; ++m) {
      if (hrr::p_affine(m).eval(a, b_param) != Rat(values[m - 1])) first_bad = m;
    }
    const Rat fitted_volume = a * 720;
    std::string result = "fit from m=1,2 (" + values[0].get_str() + ", " + values[1].get_str() +
                         "): a=" + a.to_string() + ", b=" + b_param.to_string() + ", 720a=" +
                         fitted_volume.to_string() + ", 144b=" + (b_param * 144).to_string();
    result += first_bad == 0 ? "; reproduces m=3.." + std::to_string(m_max) + " exactly"
                             : "; fails at m=" + std::to_string(first_bad);
    result += fitted_volume == Rat(volume) ? "; 720a matches (-K)^5" : "; 720a differs from (-K)^5";
    const bool ok = first_bad == 0 && fitted_volume == Rat(volume);
    out.push_back({tag + "standard convention vs Riemann-Roch",
                   "h0(-mK) values are P(m) of the 5-fold", result,
                   ok ? ClaimStatus::confirmed : ClaimStatus::discrepancy});
  }

  // (3) printed convention against the Riemann-Roch shape.
  if (printed_ok && m_max >= 6) {
    const auto [a, b_param] = hrr::fit_ab({1, printed[0]}, {2, printed[1]});
    long first_bad = 0;
    for (long m = 3; m <= m_max && first_bad == 0; ++m) {
      if (hrr::p_affine(m).eval(a, b_param) != Rat(printed[m - 1])) first_bad = m;
    }
    std::vector<std::pair<Rat, Rat>> pts;
    for (long m = 1; m <= 6; ++m) pts.emplace_back(Rat(m), Rat(printed[m - 1]));
    const Rat at_zero = Poly::interpolate(pts)(0);
    std::string result = "printed values " + join_values({printed.begin(), printed.begin() + 3}) +
                         ", ...; fit from m=1,2 gives a=" + a.to_string() + ", b=" + b_param.to_string();
    result += first_bad == 0 ? ", consistent" : ", mispredicts m=" + std::to_string(first_bad);
    result += "; quintic through m=1..6 extrapolates P(0)=" + at_zero.to_string() + " (Riemann-Roch needs 1)";
    const bool ok = first_bad == 0 && at_zero == 1;
    out.push_back({tag + "printed convention vs Riemann-Roch",
                   "printed h0 values are P(m) of the 5-fold", result,
                   ok ? ClaimStatus::confirmed : ClaimStatus::discrepancy});
  }
  return out;
}

}  // namespace fanobound::bundle
