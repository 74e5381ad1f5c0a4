#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fanobound/affine.hpp"
#include "fanobound/poly.hpp"
#include "fanobound/rational.hpp"

namespace fanobound::derive {

enum class Sense { ge, gt };

inline constexpr const char* kGlobalScope = "global";

/// form(a, b) >= 0, or > 0 when sense is gt.
struct Constraint {
  AffineForm form;
  Sense sense = Sense::ge;
  std::string provenance;
  /// Branch label for case hypotheses, kGlobalScope otherwise.
  std::string scope = kGlobalScope;

  bool holds_at(const Rat& a, const Rat& b) const;
};

/// Which axioms a system is built from. A1/A2/A3 are always on; A4 is
/// instantiated as P(m) >= 0 for m = 1..vanishing_horizon.
struct AxiomConfig {
  int vanishing_horizon = 6;
  bool a5_p2_ge_p1 = true;
};

class ConstraintSystem {
 public:
  ConstraintSystem() = default;

  /// A1: 720a in Z, a >= 1/720. A2: 144b in Z. A3: P(m) in Z.
  /// A4: P(m) >= 0 (m = 1..horizon). A5: P(2) >= P(1), a case hypothesis.
  static ConstraintSystem paper_axioms(const AxiomConfig& config = {});

  /// Only A1 (with its integrality facts) and A3; no vanishing rows.
  static ConstraintSystem base();

  ConstraintSystem with(Constraint c) const;
  /// f == value, stored as two opposing non-strict rows.
  ConstraintSystem with_equality(const AffineForm& f, const Rat& value, const std::string& provenance,
                                 const std::string& scope = kGlobalScope) const;

  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  bool p_integral() const { return p_integral_; }
  bool a_integral() const { return a_integral_; }
  bool b_integral() const { return b_integral_; }
  const std::vector<std::string>& axioms() const { return axioms_; }

  bool contains(const Rat& a, const Rat& b) const;

 private:
  std::vector<Constraint> constraints_;
  std::vector<std::string> axioms_;
  bool p_integral_ = false;
  bool a_integral_ = false;
  bool b_integral_ = false;
};

struct Minimum {
  enum class Kind { bounded, unbounded_below, infeasible };

  Kind kind = Kind::infeasible;
  /// Infimum of f over the feasible region (valid when bounded).
  Rat value;
  bool attained = false;
  /// Farkas multipliers, one per constraint: f - value == sum(lambda_i * g_i)
  /// exactly, every lambda_i >= 0. When the infimum is not attained some
  /// strict constraint carries a positive multiplier.
  std::vector<Rat> multipliers;

  bool bounded() const { return kind == Kind::bounded; }
};

/// Exact infimum of f over cs by Fourier-Motzkin elimination (b, then a)
/// of the system cs plus the objective row t - f >= 0.
Minimum fm_minimize(const ConstraintSystem& cs, const AffineForm& f);

/// sum(lambda_i * g_i) over the system's constraints.
AffineForm combine(const ConstraintSystem& cs, const std::vector<Rat>& multipliers);

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P(m) sense bound, with the Farkas witness of the minimization it came
/// from.
struct Fact {
  long m = 0;
  Rat bound;
  Sense sense = Sense::ge;
  std::vector<std::string> derivation;

  Rat raw_bound;
  Sense raw_sense = Sense::ge;
  std::vector<Rat> multipliers;

  std::string to_string() const;
};

/// (P > q) -> (P >= floor(q) + 1); (P >= q, q not integral) -> (P >= ceil q).
/// Unchanged when cs does not record P in Z.
Fact strengthen_integral(const Fact& fact, const ConstraintSystem& cs);

/// fm_minimize of p_affine(m) followed by strengthen_integral. Throws
/// DerivationError when cs is infeasible or P(m) is unbounded below.
Fact derive_lower_bound(const ConstraintSystem& cs, long m);

/// Re-executes a fact's recorded derivation from its witness. Throws
/// DerivationError if the witness does not certify the raw bound.
Fact replay(const Fact& fact, const ConstraintSystem& cs);

/// p_affine(m) - bound, sense preserved, normalized by a positive scalar.
Constraint fact_to_constraint(const Fact& fact);

struct Branch {
  std::string label;
  ConstraintSystem system;
  /// P(1) == *p1, or P(1) >= tail_from when p1 is empty.
  std::optional<long> p1;
  long tail_from = 0;
};

struct Split {
  std::vector<Branch> branches;
  std::string coverage_note;
};

/// Branches P(1) = 0, ..., P(1) = lmax and P(1) >= lmax + 1.
Split split_on_p1(const ConstraintSystem& cs, long lmax);

/// Global bound from per-branch facts on the same m: the minimum.
Fact merge_branch_facts(const std::vector<Fact>& facts);

/// P(m+1) - P(m) as an affine form.
AffineForm difference_form(long m);
/// Coefficients of difference_form as polynomials in m: {a, b, constant}.
struct DifferencePolys {
  Poly coeff_a;
  Poly coeff_b;
  Poly constant;
};
const DifferencePolys& difference_polys();

struct MonotoneStep {
  long m = 0;
  Minimum minimum;  ///< of P(m+1) - P(m)
};

/// For every m >= from: D(m) - first_lambda(m) g_first - second_lambda(m) g_second
/// == residual(m), with both lambdas nonnegative and residual positive on
/// [from, inf).
struct TailCertificate {
  long from = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  Poly first_lambda;
  Poly second_lambda;
  Poly residual;
};

struct MonotoneResult {
  bool ok = false;
  std::vector<MonotoneStep> steps;
  std::optional<TailCertificate> tail;
  std::optional<long> failing_m;
  std::string failure;
};

/// Worst-case certificate that P(m+1) > P(m) for every m >= m0: per-m
/// minimization on [m0, m_cert] and a polynomial-multiplier tail beyond.
MonotoneResult monotone_from(const ConstraintSystem& cs, long m0, long m_cert);

/// Searches constraint pairs (in index order) for a tail certificate
/// starting at `from`.
std::optional<TailCertificate> find_tail_certificate(const ConstraintSystem& cs, long from);

}  // namespace fanobound::derive
