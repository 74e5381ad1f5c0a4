#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "fanobound/audit.hpp"
#include "fanobound/poly.hpp"
#include "fanobound/rational.hpp"

namespace fanobound::bundle {

/// E = O(e1) + ... + O(e5) over P^1; X = P(E) is a 5-fold.
struct SplitBundle {
  std::array<long, 5> twists{0, 0, 0, 0, 1};

  static SplitBundle example() { return {}; }
  long degree() const;
  std::string to_string() const;

  friend bool operator==(const SplitBundle&, const SplitBundle&) = default;
};

/// standard: rank S^k(O^4) = C(k+3, 3). paper: rank (k-1)k(k+1)/6, as printed
/// for the example decomposition.
enum class RankConvention { standard, paper };

const char* to_string(RankConvention c);
RankConvention parse_convention(const std::string& text);

/// Twist degree -> multiplicity.
using TwistMultiset = std::map<long, BigInt>;

class UnsupportedConvention : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// h^0(P^1, O(d)) = max(0, d + 1).
BigInt h0_p1(long d);

/// -K = l_coeff * L + h_coeff * H with l_coeff = 5, h_coeff = 2 - deg E.
struct AnticanonicalData {
  long l_coeff = 5;
  long h_coeff = 0;
};
AnticanonicalData anticanonical_data(const SplitBundle& b);

/// (-K)^5 from L^5 = deg E, L^4.H = 1, H^2 = 0.
BigInt anticanonical_volume(const SplitBundle& b);

/// Twist decomposition of S^k(E). The paper convention only covers bundles
/// with four trivial summands; anything else raises UnsupportedConvention.
TwistMultiset sym_power_twists(const SplitBundle& b, long k, RankConvention conv);

struct H0Result {
  BigInt value;
  /// False when some summand of S^{5m}E (x) O(m h_coeff) has degree < -1,
  /// so h^1 may be nonzero and h^0 need not equal chi.
  bool vanishing_guaranteed = true;
};

/// h^0(X, -mK) = sum over S^{5m}E of h^0(P^1, O(d + m h_coeff)). m >= 1.
H0Result h0_anti_checked(const SplitBundle& b, long m, RankConvention conv);
BigInt h0_anti(const SplitBundle& b, long m, RankConvention conv);

/// m(5m-1)(5m+1)(5m+2)(10m+3)/24, the printed closed form.
BigInt paper_closed_form(long m);
Poly paper_closed_form_poly();

/// Paper-convention sum vs closed form, standard-convention fit to the
/// Riemann-Roch shape, and the fitted (-K)^5 against intersection theory.
AuditReport consistency_audit(const SplitBundle& b, long m_max);

}  // namespace fanobound::bundle
