#include "fanobound/derive.hpp"

#include <algorithm>

#include "fanobound/hrr.hpp"

namespace fanobound::derive {

namespace {

std::string sense_op(Sense s) { return s == Sense::gt ? ">" : ">="; }

// One row of the elimination: ca*a + cb*b + ct*t + c0 (>= | >) 0, kept as
// an explicit nonnegative combination of the input rows.
struct Row {
  Rat ca, cb, ct, c0;
  std::vector<Rat> mult;
  bool strict = false;

  bool same_as(const Row& o) const {
    return strict == o.strict && ca == o.ca && cb == o.cb && ct == o.ct && c0 == o.c0;
  }
};

void scale(Row& r, const Rat& s) {
  r.ca *= s;
  r.cb *= s;
  r.ct *= s;
  r.c0 *= s;
  for (auto& x : r.mult) x *= s;
}

void normalize(Row& r) {
  for (const Rat* c : {&r.ca, &r.cb, &r.ct, &r.c0}) {
    if (!c->is_zero()) {
      scale(r, Rat(1) / abs(*c));
      return;
    }
  }
}

Row combine_rows(const Row& p, const Rat& wp, const Row& q, const Rat& wq) {
  Row out;
  out.ca = wp * p.ca + wq * q.ca;
  out.cb = wp * p.cb + wq * q.cb;
  out.ct = wp * p.ct + wq * q.ct;
  out.c0 = wp * p.c0 + wq * q.c0;
  out.mult.resize(p.mult.size());
  for (std::size_t i = 0; i < p.mult.size(); ++i) out.mult[i] = wp * p.mult[i] + wq * q.mult[i];
  out.strict = p.strict || q.strict;
  return out;
}

enum class Var { a, b };

const Rat& coeff(const Row& r, Var v) { return v == Var::a ? r.ca : r.cb; }

// Returns false when a variable-free row is violated.
bool push_row(std::vector<Row>& rows, Row r) {
  if (r.ca.is_zero() && r.cb.is_zero() && r.ct.is_zero()) {
    const int s = r.c0.sign();
    if (s < 0 || (s == 0 && r.strict)) {
      rows.push_back(std::move(r));
      return false;
    }
    return true;  // tautology
  }
  normalize(r);
  for (const auto& existing : rows) {
    if (existing.same_as(r)) return true;
  }
  rows.push_back(std::move(r));
  return true;
}

// Fourier-Motzkin step. Returns false if the system became infeasible.
bool eliminate(std::vector<Row>& rows, Var v) {
  std::vector<const Row*> pos, neg;
  std::vector<Row> out;
  for (const auto& r : rows) {
    const int s = coeff(r, v).sign();
    if (s > 0) {
      pos.push_back(&r);
    } else if (s < 0) {
      neg.push_back(&r);
    } else if (!push_row(out, r)) {
      rows = std::move(out);
      return false;
    }
  }
  for (const Row* p : pos) {
    for (const Row* q : neg) {
      Row c = combine_rows(*p, -coeff(*q, v), *q, coeff(*p, v));
      if (v == Var::b) c.cb = 0;
      else c.ca = 0;
      if (!push_row(out, std::move(c))) {
        rows = std::move(out);
        return false;
      }
    }
  }
  rows = std::move(out);
  return true;
}

// P(1) as used by the case split.
AffineForm p1() { return hrr::p_affine(1); }

}  // namespace

bool Constraint::holds_at(const Rat& a, const Rat& b) const {
  const int s = form.eval(a, b).sign();
  return sense == Sense::gt ? s > 0 : s >= 0;
}

ConstraintSystem ConstraintSystem::base() {
  ConstraintSystem cs;
  cs.a_integral_ = true;
  cs.b_integral_ = true;
  cs.p_integral_ = true;
  cs.axioms_ = {"A1", "A2", "A3"};
  cs.constraints_.push_back({AffineForm{1, 0, Rat(-1, 720)}, Sense::ge, "A1", kGlobalScope});
  return cs;
}

ConstraintSystem ConstraintSystem::paper_axioms(const AxiomConfig& config) {
  ConstraintSystem cs = base();
  cs.axioms_.push_back("A4");
  for (long m = 1; m <= config.vanishing_horizon; ++m) {
    cs.constraints_.push_back(
        {hrr::p_affine(m).normalized(), Sense::ge, "A4:m=" + std::to_string(m), kGlobalScope});
  }
  if (config.a5_p2_ge_p1) {
    cs.axioms_.push_back("A5");
    cs.constraints_.push_back(
        {(hrr::p_affine(2) - hrr::p_affine(1)).normalized(), Sense::ge, "A5", kGlobalScope});
  }
  return cs;
}

ConstraintSystem ConstraintSystem::with(Constraint c) const {
  ConstraintSystem out = *this;
  out.constraints_.push_back(std::move(c));
  return out;
}

ConstraintSystem ConstraintSystem::with_equality(const AffineForm& f, const Rat& value,
                                                 const std::string& provenance,
                                                 const std::string& scope) const {
  const AffineForm shifted = f - AffineForm::constant_form(value);
  return with({shifted.normalized(), Sense::ge, provenance + ":ge", scope})
      .with({(-shifted).normalized(), Sense::ge, provenance + ":le", scope});
}

bool ConstraintSystem::contains(const Rat& a, const Rat& b) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return c.holds_at(a, b); });
}

AffineForm combine(const ConstraintSystem& cs, const std::vector<Rat>& multipliers) {
  AffineForm out;
  for (std::size_t i = 0; i < cs.size() && i < multipliers.size(); ++i) {
    if (!multipliers[i].is_zero()) out += cs.constraints()[i].form * multipliers[i];
  }
  return out;
}

Minimum fm_minimize(const ConstraintSystem& cs, const AffineForm& f) {
  const std::size_t n = cs.size();
  std::vector<Row> rows;
  rows.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Constraint& c = cs.constraints()[i];
    Row r{c.form.coeff_a, c.form.coeff_b, 0, c.form.constant, std::vector<Rat>(n + 1),
          c.sense == Sense::gt};
    r.mult[i] = 1;
    rows.push_back(std::move(r));
  }
  Row objective{-f.coeff_a, -f.coeff_b, 1, -f.constant, std::vector<Rat>(n + 1), false};
  objective.mult[n] = 1;
  rows.push_back(std::move(objective));

  Minimum out;
  if (!eliminate(rows, Var::b) || !eliminate(rows, Var::a)) {
    out.kind = Minimum::Kind::infeasible;
    return out;
  }

  // Only lower bounds on t remain: t >= -c0/ct, or t > -c0/ct.
  const Row* best = nullptr;
  Rat best_q;
  for (const auto& r : rows) {
    if (r.ct.sign() <= 0) continue;
    const Rat q = -r.c0 / r.ct;
    if (best == nullptr || q > best_q || (q == best_q && r.strict && !best->strict)) {
      best = &r;
      best_q = q;
    }
  }
  if (best == nullptr) {
    out.kind = Minimum::Kind::unbounded_below;
    return out;
  }
  out.kind = Minimum::Kind::bounded;
  out.value = best_q;
  out.attained = !best->strict;
  out.multipliers.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.multipliers[i] = best->mult[i] / best->ct;

  const AffineForm residual = f - AffineForm::constant_form(out.value) - combine(cs, out.multipliers);
  if (residual != AffineForm{}) throw std::logic_error("fm_minimize: Farkas identity failed");
  return out;
}

std::string Fact::to_string() const {
  return "P(" + std::to_string(m) + ") " + sense_op(sense) + " " + bound.to_string();
}

Fact strengthen_integral(const Fact& fact, const ConstraintSystem& cs) {
  if (!cs.p_integral()) return fact;
  Fact out = fact;
  if (fact.sense == Sense::gt) {
    out.bound = Rat(BigInt(fact.bound.floor() + 1));
    out.sense = Sense::ge;
  } else if (!fact.bound.is_integer()) {
    out.bound = Rat(fact.bound.ceil());
  } else {
    return fact;
  }
  out.derivation.push_back("strengthen_integral");
  return out;
}

Fact derive_lower_bound(const ConstraintSystem& cs, long m) {
  if (m < 0) throw std::invalid_argument("derive_lower_bound needs m >= 0");
  const Minimum min = fm_minimize(cs, hrr::p_affine(m));
  if (min.kind == Minimum::Kind::infeasible)
    throw DerivationError("contradictory hypotheses: system is infeasible");
  if (min.kind == Minimum::Kind::unbounded_below)
    throw DerivationError("P(" + std::to_string(m) + ") is unbounded below under the system");
  Fact fact;
  fact.m = m;
  fact.bound = min.value;
  fact.sense = min.attained ? Sense::ge : Sense::gt;
  fact.derivation = {"fm_minimize"};
  fact.raw_bound = min.value;
  fact.raw_sense = fact.sense;
  fact.multipliers = min.multipliers;
  return strengthen_integral(fact, cs);
}

Fact replay(const Fact& fact, const ConstraintSystem& cs) {
  if (fact.multipliers.size() != cs.size())
    throw DerivationError("witness size does not match the system");
  bool strict = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (fact.multipliers[i].sign() < 0) throw DerivationError("negative multiplier");
    if (fact.multipliers[i].sign() > 0 && cs.constraints()[i].sense == Sense::gt) strict = true;
  }
  const AffineForm residual = hrr::p_affine(fact.m) - combine(cs, fact.multipliers);
  if (!residual.is_constant()) throw DerivationError("witness leaves a nonconstant residual");
  Fact out = fact;
  out.bound = residual.constant;
  out.raw_bound = residual.constant;
  out.sense = strict ? Sense::gt : Sense::ge;
  out.raw_sense = out.sense;
  out.derivation = {"fm_minimize"};
  const bool strengthened = std::find(fact.derivation.begin(), fact.derivation.end(),
                                      "strengthen_integral") != fact.derivation.end();
  return strengthened ? strengthen_integral(out, cs) : out;
}

Constraint fact_to_constraint(const Fact& fact) {
  const AffineForm form = hrr::p_affine(fact.m) - AffineForm::constant_form(fact.bound);
  return {form.normalized(), fact.sense, "fact:" + fact.to_string(), kGlobalScope};
}

Split split_on_p1(const ConstraintSystem& cs, long lmax) {
  if (lmax < 0) throw std::invalid_argument("lmax must be >= 0");
  Split out;
  for (long l = 0; l <= lmax; ++l) {
    const std::string label = "P(1)=" + std::to_string(l);
    out.branches.push_back({label, cs.with_equality(p1(), l, "hyp:" + label, label), l, 0});
  }
  const long tail = lmax + 1;
  const std::string label = "P(1)>=" + std::to_string(tail);
  const AffineForm f = p1() - AffineForm::constant_form(tail);
  out.branches.push_back(
      {label, cs.with({f.normalized(), Sense::ge, "hyp:" + label, label}), std::nullopt, tail});
  out.coverage_note = "P(1) is a nonnegative integer (A3, A4): {0, ..., " + std::to_string(lmax) +
                      "} and [" + std::to_string(tail) + ", inf) partition Z>=0";
  return out;
}

Fact merge_branch_facts(const std::vector<Fact>& facts) {
  if (facts.empty()) throw std::invalid_argument("no branch facts to merge");
  Fact out = facts.front();
  for (const Fact& f : facts) {
    if (f.m != out.m) throw std::invalid_argument("branch facts concern different m");
    if (f.bound < out.bound || (f.bound == out.bound && f.sense == Sense::ge)) {
      out.bound = f.bound;
      out.sense = f.sense;
    }
  }
  out.derivation = {"merge_branches"};
  out.raw_bound = out.bound;
  out.raw_sense = out.sense;
  out.multipliers.clear();
  return out;
}

AffineForm difference_form(long m) { return hrr::p_affine(m + 1) - hrr::p_affine(m); }

const DifferencePolys& difference_polys() {
  static const DifferencePolys polys = [] {
    const hrr::HrrPolys& p = hrr::p_polys();
    const Poly next = Poly::linear(1, 1);
    return DifferencePolys{p.coeff_a.compose(next) - p.coeff_a, p.coeff_b.compose(next) - p.coeff_b,
                           p.constant.compose(next) - p.constant};
  }();
  return polys;
}

std::optional<TailCertificate> find_tail_certificate(const ConstraintSystem& cs, long from) {
  const DifferencePolys& d = difference_polys();
  const auto& cons = cs.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      const AffineForm& gi = cons[i].form;
      const AffineForm& gj = cons[j].form;
      const Rat det = gi.coeff_a * gj.coeff_b - gj.coeff_a * gi.coeff_b;
      if (det.is_zero()) continue;
      const Rat inv = Rat(1) / det;
      Poly li = (d.coeff_a * gj.coeff_b - d.coeff_b * gj.coeff_a) * inv;
      Poly lj = (d.coeff_b * gi.coeff_a - d.coeff_a * gi.coeff_b) * inv;
      Poly residual = d.constant - li * gi.constant - lj * gj.constant;
      if (poly_nonneg_on_ray(li, from).verdict != RayVerdict::certified_nonneg) continue;
      if (poly_nonneg_on_ray(lj, from).verdict != RayVerdict::certified_nonneg) continue;
      if (poly_positive_on_ray(residual, from).verdict != RayVerdict::certified_nonneg) continue;
      return TailCertificate{from, i, j, std::move(li), std::move(lj), std::move(residual)};
    }
  }
  return std::nullopt;
}

MonotoneResult monotone_from(const ConstraintSystem& cs, long m0, long m_cert) {
  if (m0 < 1) throw std::invalid_argument("monotone_from needs m0 >= 1");
  MonotoneResult out;
  for (long m = m0; m <= m_cert; ++m) {
    Minimum min = fm_minimize(cs, difference_form(m));
    const bool positive = min.bounded() && (min.value.sign() > 0 || (min.value.is_zero() && !min.attained));
    if (!positive) {
      out.failing_m = m;
      out.failure = "P(" + std::to_string(m + 1) + ") - P(" + std::to_string(m) + ") > 0 not derivable" +
                    (min.bounded() ? " (infimum " + min.value.to_string() + ")" : " (unbounded below)");
      return out;
    }
    out.steps.push_back({m, std::move(min)});
  }
  out.tail = find_tail_certificate(cs, std::max(m0, m_cert + 1));
  if (!out.tail) {
    out.failure = "tail positivity not certified beyond m=" + std::to_string(m_cert) + "; raise m_cert";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace fanobound::derive
