#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fanobound/bundle.hpp"
#include "fanobound/certificate.hpp"
#include "fanobound/derive.hpp"
#include "fanobound/hrr.hpp"

namespace fanobound::bounds {

using derive::ConstraintSystem;

enum class DimRule { nonvanishing, lemma2 };

/// Evidence that dim Phi_{|-mK|}(X) >= target_dim.
struct DimWitness {
  int target_dim = 1;
  long m = 0;
  DimRule rule = DimRule::nonvanishing;
  int r_used = 0;  ///< lemma2 only
  /// Worst-case minimum of the slack, or the concrete slack. Positive, or
  /// zero with strict_margin (infimum not attained).
  Rat margin;
  bool strict_margin = false;
  /// Worst-case Farkas multipliers over the source system.
  std::vector<Rat> multipliers;
  /// Concrete h0 value the witness was checked on.
  std::optional<BigInt> h0;
};

/// h0 provider for concrete mode when no Chern data is given.
struct H0Oracle {
  std::string name;
  std::function<BigInt(long)> h0;
  BigInt d5;  ///< (-K)^5 used in the separation thresholds
  /// Polynomial agreeing with h0 for m >= 1; needed for the monotone tail.
  std::optional<Poly> closed_form;
  /// Set when the oracle is the split-bundle computation, so a verifier
  /// can recompute the values.
  std::optional<bundle::SplitBundle> bundle;
  bundle::RankConvention convention = bundle::RankConvention::standard;
};

/// Oracle for X = P(E). Standard convention uses the Riemann-Roch fit of the
/// computed values as closed form; paper convention the printed formula.
H0Oracle bundle_oracle(const bundle::SplitBundle& b, bundle::RankConvention conv);

using Source = std::variant<ConstraintSystem, hrr::ChernData, H0Oracle>;

/// P(m) >= 2 gives a pencil, hence dim >= 1. margin = bound - 1.
std::optional<DimWitness> nonvanishing_rule(const derive::Fact& fact);

/// m^r * d5 + r.
BigInt lemma2_threshold(long m, int r, const BigInt& d5);
/// m^r * 720a + r, with (-K)^5 = 720a.
AffineForm lemma2_threshold_form(long m, int r);

/// h0 > m^r d5 + r gives dim >= r + 1 at m.
std::optional<DimWitness> lemma2_check(const BigInt& h0, long m, int r, const BigInt& d5);

/// P(m) - (m^r 720a + r) and its infimum over cs.
struct Lemma2Slack {
  AffineForm slack;
  derive::Minimum minimum;
};
Lemma2Slack lemma2_slack(const ConstraintSystem& cs, long m, int r);
std::optional<DimWitness> lemma2_worstcase(const ConstraintSystem& cs, long m, int r);

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest m in [m_min, m_max] with a witness for dim >= target_dim
/// (nonvanishing for 1; lemma2 over r in [target-1, 4] otherwise). Ties go
/// to the smallest r.
DimWitness minimal_r(const Source& source, int target_dim, long m_max, long m_min = 1);

/// Certified evidence that h0(-rK) != 0 for every r >= r0.
struct R0Evidence {
  long r0 = 0;
  long m_cert = 0;
  // worst case
  std::optional<derive::Fact> floor;
  std::optional<derive::MonotoneResult> monotone;
  // concrete: values[i] = P(r0 + i) for i = 0..m_cert + 1 - r0
  std::vector<BigInt> values;
  std::optional<RayCheck> tail;
  Poly difference;
};

class CertificationError : public std::runtime_error {
 public:
  CertificationError(std::string step, const std::string& reason)
      : std::runtime_error(step + ": " + reason), step_(std::move(step)) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

/// Throws std::invalid_argument for r0 < 3 and CertificationError when the
/// nonvanishing floor or the monotone tail cannot be certified.
R0Evidence certify_r0(const Source& source, long r0, long m_cert);

long compose_bound(long r0, const std::array<long, 3>& rs);

struct SolveOptions {
  derive::AxiomConfig axioms;
  long lmax = 3;
  long m_cert = 64;
  long m_max = 32;
  /// Worst case: keep the vanishing rows and A5 next to P(3) >= 7 when
  /// searching r_i (default: the P(3) >= 7 system alone).
  bool retain_axioms = false;
  /// Lower end of the r_i search; defaults to the certified r0.
  std::optional<long> search_from;
};

cert::Certificate solve_worst_case(const SolveOptions& opts = {});
cert::Certificate solve_concrete(const hrr::ChernData& chern, const SolveOptions& opts = {});
cert::Certificate solve_oracle(const H0Oracle& oracle, const SolveOptions& opts = {});

/// The example bundle under the given convention (paper: bound 15 with r = [3, 4, 5]).
cert::Certificate example1_bound(bundle::RankConvention conv, const SolveOptions& opts = {});

/// The system the worst-case r_i search runs on, built from the axioms and
/// the merged P(3) lower bound.
ConstraintSystem dimension_system(const SolveOptions& opts, const derive::Fact& p3_fact);

}  // namespace fanobound::bounds
