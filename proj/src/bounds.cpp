#include "fanobound/bounds.hpp"

#include <map>
#include <memory>

namespace fanobound::bounds {

using derive::Fact;
using derive::Minimum;
using derive::Sense;
using nlohmann::json;

namespace {

bool positive_margin(const Minimum& min) {
  return min.bounded() && (min.value.sign() > 0 || (min.value.is_zero() && !min.attained));
}

std::string dim_claim(int target, long m) {
  return "dim Phi_{|-" + std::to_string(m) + "K|}(X) >= " + std::to_string(target);
}

// P(m) for concrete sources.
BigInt concrete_value(const Source& source, long m) {
  if (const auto* chern = std::get_if<hrr::ChernData>(&source)) return hrr::p_eval(*chern, m);
  return std::get<H0Oracle>(source).h0(m);
}

const BigInt& concrete_d5(const Source& source) {
  if (const auto* chern = std::get_if<hrr::ChernData>(&source)) return chern->k5;
  return std::get<H0Oracle>(source).d5;
}

std::optional<Poly> concrete_poly(const Source& source) {
  if (const auto* chern = std::get_if<hrr::ChernData>(&source)) return hrr::p_poly(chern->a(), chern->b());
  return std::get<H0Oracle>(source).closed_form;
}

std::optional<DimWitness> worst_nonvanishing(const ConstraintSystem& cs, long m) {
  try {
    return nonvanishing_rule(derive::derive_lower_bound(cs, m));
  } catch (const derive::DerivationError&) {
    return std::nullopt;
  }
}

// Accumulates steps with sequential ids.
class Builder {
 public:
  explicit Builder(cert::Mode mode) { cert_.mode = mode; }

  int add(std::string rule, std::vector<int> inputs, std::string claim, json witness) {
    const int id = static_cast<int>(cert_.steps.size()) + 1;
    cert_.steps.push_back({id, std::move(rule), std::move(inputs), std::move(claim), std::move(witness)});
    return id;
  }

  cert::Certificate& cert() { return cert_; }

 private:
  cert::Certificate cert_;
};

// Worst-case prover state: step ids of registered constraints.
class WorstCaseProver {
 public:
  explicit WorstCaseProver(Builder& b) : b_(b) {}

  int add_constraint(const derive::Constraint& c, const std::string& rule, std::vector<int> inputs,
                     json extra) {
    json w = std::move(extra);
    w["name"] = c.provenance;
    w["scope"] = c.scope;
    w["constraint"] = cert::form_json(c.form, c.sense == Sense::gt);
    const std::string op = c.sense == Sense::gt ? " > 0" : " >= 0";
    const int id = b_.add(rule, std::move(inputs), c.form.to_string() + op, std::move(w));
    ids_[key(c)] = id;
    return id;
  }

  int id_of(const derive::Constraint& c) const {
    const auto it = ids_.find(key(c));
    if (it == ids_.end()) throw std::logic_error("unregistered constraint " + c.provenance);
    return it->second;
  }

  // Multipliers as witness entries; also the matching input list.
  std::pair<json, std::vector<int>> multipliers(const ConstraintSystem& cs, const std::vector<Rat>& lambda) const {
    json arr = json::array();
    std::vector<int> inputs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (lambda[i].is_zero()) continue;
      const int id = id_of(cs.constraints()[i]);
      arr.push_back(json{{"step", id}, {"value", cert::rat_json(lambda[i])}});
      inputs.push_back(id);
    }
    return {arr, inputs};
  }

  int add_fact(const ConstraintSystem& cs, const Fact& fact, const std::string& scope) {
    auto [mult, inputs] = multipliers(cs, fact.multipliers);
    json w{{"m", fact.m},
           {"scope", scope},
           {"multipliers", mult},
           {"raw_bound", cert::rat_json(fact.raw_bound)},
           {"raw_strict", fact.raw_sense == Sense::gt},
           {"bound", cert::rat_json(fact.bound)}};
    std::string claim = fact.to_string();
    if (scope != derive::kGlobalScope) claim += " [" + scope + "]";
    return b_.add("derive_lower_bound", std::move(inputs), claim, std::move(w));
  }

 private:
  static std::string key(const derive::Constraint& c) { return c.scope + "|" + c.provenance; }

  Builder& b_;
  std::map<std::string, int> ids_;
};

void add_compose(Builder& b, int r0_step, long r0, const std::array<int, 3>& dim_steps,
                 const std::array<long, 3>& rs) {
  const long bound = compose_bound(r0, rs);
  std::vector<int> inputs{r0_step, dim_steps[0], dim_steps[1], dim_steps[2]};
  b.add("compose_bound", std::move(inputs),
        "Phi_{|-mK|} birational for all m >= " + std::to_string(bound),
        json{{"r0", r0}, {"r", rs}, {"bound", bound}});
  auto& c = b.cert();
  c.r0 = r0;
  c.r = rs;
  c.bound = bound;
}

cert::Certificate solve_concrete_source(const Source& source, Builder& b, int origin_step,
                                        const SolveOptions& opts) {
  std::map<long, int> value_steps;
  std::map<long, BigInt> values;
  auto value_of = [&](long m) -> const BigInt& {
    auto it = values.find(m);
    if (it == values.end()) it = values.emplace(m, concrete_value(source, m)).first;
    return it->second;
  };
  auto value_step = [&](long m) {
    const auto it = value_steps.find(m);
    if (it != value_steps.end()) return it->second;
    const BigInt& v = value_of(m);
    const int id = b.add("p_value", {origin_step}, "h0(-" + std::to_string(m) + "K) = " + v.get_str(),
                         json{{"m", m}, {"value", v.get_str()}});
    value_steps.emplace(m, id);
    return id;
  };

  // r0: first r0 >= 3 with a certified nonvanishing ray.
  std::optional<R0Evidence> evidence;
  std::string last_failure = "no candidate r0";
  for (long r0 = 3; r0 <= opts.m_max && !evidence; ++r0) {
    try {
      evidence = certify_r0(source, r0, opts.m_cert);
    } catch (const CertificationError& e) {
      last_failure = e.what();
    }
  }
  if (!evidence) throw CertificationError("certify_r0", last_failure);
  const long r0 = evidence->r0;
  for (std::size_t i = 0; i < evidence->values.size(); ++i) values.emplace(r0 + static_cast<long>(i), evidence->values[i]);

  std::vector<int> r0_inputs{value_step(r0)};
  const long last = std::max(r0, opts.m_cert + 1);
  for (long m = r0; m < last; ++m) {
    const int lo = value_step(m);
    const int hi = value_step(m + 1);
    const BigInt margin = value_of(m + 1) - value_of(m);
    r0_inputs.push_back(b.add("monotone_step", {lo, hi},
                              "P(" + std::to_string(m + 1) + ") - P(" + std::to_string(m) + ") > 0",
                              json{{"m", m}, {"margin", margin.get_str()}}));
  }
  r0_inputs.push_back(b.add("monotone_tail", {origin_step},
                            "P(m+1) - P(m) > 0 for all m >= " + std::to_string(last),
                            json{{"from", last},
                                 {"difference", cert::poly_json(evidence->difference)},
                                 {"shifted", cert::poly_json(evidence->tail->shifted)}}));
  const int r0_step = b.add("certify_r0", std::move(r0_inputs),
                            "h0(-rK) != 0 for all r >= " + std::to_string(r0),
                            json{{"r0", r0}, {"m_cert", opts.m_cert}});

  const long from = opts.search_from.value_or(r0);
  std::array<int, 3> dim_steps{};
  std::array<long, 3> rs{};
  for (int target = 1; target <= 3; ++target) {
    DimWitness w;
    try {
      w = minimal_r(source, target, opts.m_max, from);
    } catch (const SearchExhausted& e) {
      throw CertificationError("minimal_r(dim " + std::to_string(target) + ")", e.what());
    }
    const int vstep = value_step(w.m);
    if (w.rule == DimRule::nonvanishing) {
      dim_steps[target - 1] = b.add("nonvanishing", {vstep}, dim_claim(target, w.m),
                                    json{{"m", w.m}, {"target_dim", target}, {"margin", cert::rat_json(w.margin)}});
    } else {
      const BigInt& d5 = concrete_d5(source);
      dim_steps[target - 1] =
          b.add("lemma2", {vstep}, dim_claim(target, w.m) + " (separation, r=" + std::to_string(w.r_used) + ")",
                json{{"m", w.m},
                     {"r", w.r_used},
                     {"target_dim", target},
                     {"d5", d5.get_str()},
                     {"threshold", lemma2_threshold(w.m, w.r_used, d5).get_str()},
                     {"margin", cert::rat_json(w.margin)}});
    }
    rs[target - 1] = w.m;
  }
  add_compose(b, r0_step, r0, dim_steps, rs);
  return b.cert();
}

}  // namespace

H0Oracle bundle_oracle(const bundle::SplitBundle& b, bundle::RankConvention conv) {
  H0Oracle o;
  o.name = std::string("split bundle ") + b.to_string() + ", " + bundle::to_string(conv) + " convention";
  auto cache = std::make_shared<std::map<long, BigInt>>();
  o.h0 = [b, conv, cache](long m) {
    auto it = cache->find(m);
    if (it == cache->end()) it = cache->emplace(m, bundle::h0_anti(b, m, conv)).first;
    return it->second;
  };
  o.d5 = bundle::anticanonical_volume(b);
  o.bundle = b;
  o.convention = conv;
  if (conv == bundle::RankConvention::paper && b == bundle::SplitBundle::example()) {
    o.closed_form = bundle::paper_closed_form_poly();
  } else {
    std::vector<std::pair<Rat, Rat>> pts;
    for (long m = 1; m <= 6; ++m) pts.emplace_back(Rat(m), Rat(o.h0(m)));
    Poly p = Poly::interpolate(pts);
    bool ok = true;
    for (long m = 7; m <= 12 && ok; ++m) ok = p(m) == Rat(o.h0(m));
    if (ok) o.closed_form = std::move(p);
  }
  return o;
}

std::optional<DimWitness> nonvanishing_rule(const Fact& fact) {
  if (fact.bound < 2) return std::nullopt;
  DimWitness w;
  w.target_dim = 1;
  w.m = fact.m;
  w.rule = DimRule::nonvanishing;
  w.margin = fact.bound - 1;
  w.multipliers = fact.multipliers;
  return w;
}

BigInt lemma2_threshold(long m, int r, const BigInt& d5) {
  if (m < 1 || r < 0 || d5 < 1) throw std::invalid_argument("lemma2_threshold needs m >= 1, r >= 0, d5 >= 1");
  return BigInt(ipow(BigInt(m), static_cast<unsigned long>(r)) * d5 + r);
}

AffineForm lemma2_threshold_form(long m, int r) {
  const BigInt scale = ipow(BigInt(m), static_cast<unsigned long>(r)) * 720;
  return {Rat(scale), 0, r};
}

std::optional<DimWitness> lemma2_check(const BigInt& h0, long m, int r, const BigInt& d5) {
  const BigInt threshold = lemma2_threshold(m, r, d5);
  if (h0 <= threshold) return std::nullopt;
  DimWitness w;
  w.target_dim = r + 1;
  w.m = m;
  w.rule = DimRule::lemma2;
  w.r_used = r;
  w.margin = Rat(BigInt(h0 - threshold));
  w.h0 = h0;
  return w;
}

Lemma2Slack lemma2_slack(const ConstraintSystem& cs, long m, int r) {
  Lemma2Slack out;
  out.slack = hrr::p_affine(m) - lemma2_threshold_form(m, r);
  out.minimum = derive::fm_minimize(cs, out.slack);
  return out;
}

std::optional<DimWitness> lemma2_worstcase(const ConstraintSystem& cs, long m, int r) {
  Lemma2Slack s = lemma2_slack(cs, m, r);
  if (!positive_margin(s.minimum)) return std::nullopt;
  DimWitness w;
  w.target_dim = r + 1;
  w.m = m;
  w.rule = DimRule::lemma2;
  w.r_used = r;
  w.margin = s.minimum.value;
  w.strict_margin = !s.minimum.attained;
  w.multipliers = std::move(s.minimum.multipliers);
  return w;
}

DimWitness minimal_r(const Source& source, int target_dim, long m_max, long m_min) {
  if (target_dim < 1 || target_dim > 3) throw std::invalid_argument("target_dim must be 1, 2 or 3");
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  const auto* cs = std::get_if<ConstraintSystem>(&source);
  for (long m = std::max(1L, m_min); m <= m_max; ++m) {
    if (target_dim == 1) {
      std::optional<DimWitness> w;
      if (cs) {
        w = worst_nonvanishing(*cs, m);
      } else {
        const BigInt v = concrete_value(source, m);
        if (v >= 2) {
          w = DimWitness{1, m, DimRule::nonvanishing, 0, Rat(BigInt(v - 1)), false, {}, v};
        }
      }
      if (w) return *w;
      continue;
    }
    for (int r = target_dim - 1; r <= 4; ++r) {
      std::optional<DimWitness> w =
          cs ? lemma2_worstcase(*cs, m, r) : lemma2_check(concrete_value(source, m), m, r, concrete_d5(source));
      if (w) {
        w->target_dim = target_dim;
        return *w;
      }
    }
  }
  throw SearchExhausted("no witness for dim >= " + std::to_string(target_dim) + " with m <= " +
                        std::to_string(m_max));
}

R0Evidence certify_r0(const Source& source, long r0, long m_cert) {
  if (r0 < 3) throw std::invalid_argument("r0 must be >= 3");
  R0Evidence out;
  out.r0 = r0;
  out.m_cert = m_cert;
  if (const auto* cs = std::get_if<ConstraintSystem>(&source)) {
    Fact floor;
    try {
      floor = derive::derive_lower_bound(*cs, r0);
    } catch (const derive::DerivationError& e) {
      throw CertificationError("certify_r0", e.what());
    }
    if (floor.bound < 1) {
      throw CertificationError("certify_r0", "only " + floor.to_string() + " is derivable");
    }
    derive::MonotoneResult mono = derive::monotone_from(*cs, r0, m_cert);
    if (!mono.ok) throw CertificationError("certify_r0", mono.failure);
    out.floor = std::move(floor);
    out.monotone = std::move(mono);
    return out;
  }

  const long last = std::max(r0, m_cert + 1);
  for (long m = r0; m <= last; ++m) out.values.push_back(concrete_value(source, m));
  if (out.values.front() < 1) {
    throw CertificationError("certify_r0", "h0(-" + std::to_string(r0) + "K) = " + out.values.front().get_str());
  }
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
    if (out.values[i + 1] <= out.values[i]) {
      throw CertificationError("certify_r0", "P(m+1) <= P(m) at m=" + std::to_string(r0 + static_cast<long>(i)));
    }
  }
  const std::optional<Poly> p = concrete_poly(source);
  if (!p) throw CertificationError("certify_r0", "no closed form for the monotone tail");
  out.difference = p->compose(Poly::linear(1, 1)) - *p;
  out.tail = poly_positive_on_ray(out.difference, last);
  if (out.tail->verdict != RayVerdict::certified_nonneg) {
    throw CertificationError("certify_r0", "tail positivity not certified from m=" + std::to_string(last));
  }
  return out;
}

long compose_bound(long r0, const std::array<long, 3>& rs) { return r0 + rs[0] + rs[1] + rs[2]; }

ConstraintSystem dimension_system(const SolveOptions& opts, const Fact& p3_fact) {
  const ConstraintSystem root =
      opts.retain_axioms ? ConstraintSystem::paper_axioms(opts.axioms) : ConstraintSystem::base();
  return root.with(derive::fact_to_constraint(p3_fact));
}

cert::Certificate solve_worst_case(const SolveOptions& opts) {
  Builder b(cert::Mode::worst_case);
  WorstCaseProver prover(b);
  const ConstraintSystem axioms = ConstraintSystem::paper_axioms(opts.axioms);
  b.cert().axioms = axioms.axioms();
  for (const auto& c : axioms.constraints()) prover.add_constraint(c, "axiom", {}, json::object());

  // P(3) >= 7 by cases on P(1).
  const derive::Split split = derive::split_on_p1(axioms, opts.lmax);
  json labels = json::array();
  for (const auto& br : split.branches) labels.push_back(br.label);
  const int split_step = b.add("split_on_p1", {}, "cases on P(1): " + std::to_string(split.branches.size()) + " branches",
                               json{{"lmax", opts.lmax}, {"branches", labels}, {"coverage", split.coverage_note}});
  std::vector<Fact> facts;
  std::vector<int> merge_inputs{split_step};
  for (const auto& br : split.branches) {
    for (const auto& c : br.system.constraints()) {
      if (c.scope == br.label) prover.add_constraint(c, "hypothesis", {split_step}, json{{"branch", br.label}});
    }
    Fact fact;
    try {
      fact = derive::derive_lower_bound(br.system, 3);
    } catch (const derive::DerivationError& e) {
      throw CertificationError("derive_lower_bound[" + br.label + "]", e.what());
    }
    merge_inputs.push_back(prover.add_fact(br.system, fact, br.label));
    facts.push_back(std::move(fact));
  }
  const Fact merged = derive::merge_branch_facts(facts);
  const int merge_step = b.add("merge_branches", std::move(merge_inputs), merged.to_string(),
                               json{{"m", merged.m}, {"bound", cert::rat_json(merged.bound)}});
  const derive::Constraint p3_row = derive::fact_to_constraint(merged);
  prover.add_constraint(p3_row, "fact_to_constraint", {merge_step},
                        json{{"m", merged.m}, {"bound", cert::rat_json(merged.bound)}});

  const ConstraintSystem dims = dimension_system(opts, merged);

  // r0.
  std::optional<R0Evidence> evidence;
  std::string last_failure = "no candidate r0";
  for (long r0 = 3; r0 <= opts.m_max && !evidence; ++r0) {
    try {
      evidence = certify_r0(dims, r0, opts.m_cert);
    } catch (const CertificationError& e) {
      last_failure = e.what();
    }
  }
  if (!evidence) throw CertificationError("certify_r0", last_failure);
  const long r0 = evidence->r0;
  std::vector<int> r0_inputs{prover.add_fact(dims, *evidence->floor, derive::kGlobalScope)};
  for (const auto& step : evidence->monotone->steps) {
    auto [mult, inputs] = prover.multipliers(dims, step.minimum.multipliers);
    r0_inputs.push_back(b.add("monotone_step", std::move(inputs),
                              "P(" + std::to_string(step.m + 1) + ") - P(" + std::to_string(step.m) + ") > 0",
                              json{{"m", step.m},
                                   {"multipliers", mult},
                                   {"margin", cert::rat_json(step.minimum.value)},
                                   {"strict", !step.minimum.attained}}));
  }
  {
    const derive::TailCertificate& tail = *evidence->monotone->tail;
    const int first = prover.id_of(dims.constraints()[tail.first]);
    const int second = prover.id_of(dims.constraints()[tail.second]);
    json mult = json::array({json{{"step", first}, {"poly", cert::poly_json(tail.first_lambda)}},
                             json{{"step", second}, {"poly", cert::poly_json(tail.second_lambda)}}});
    r0_inputs.push_back(b.add("monotone_tail", {first, second},
                              "P(m+1) - P(m) > 0 for all m >= " + std::to_string(tail.from),
                              json{{"from", tail.from}, {"multipliers", mult},
                                   {"residual", cert::poly_json(tail.residual)}}));
  }
  const int r0_step = b.add("certify_r0", std::move(r0_inputs),
                            "h0(-rK) != 0 for all r >= " + std::to_string(r0),
                            json{{"r0", r0}, {"m_cert", opts.m_cert}});

  // r1, r2, r3.
  const long from = opts.search_from.value_or(r0);
  std::array<int, 3> dim_steps{};
  std::array<long, 3> rs{};
  for (int target = 1; target <= 3; ++target) {
    DimWitness w;
    try {
      w = minimal_r(dims, target, opts.m_max, from);
    } catch (const SearchExhausted& e) {
      throw CertificationError("minimal_r(dim " + std::to_string(target) + ")", e.what());
    }
    if (w.rule == DimRule::nonvanishing) {
      const Fact fact = derive::derive_lower_bound(dims, w.m);
      const int fact_step = prover.add_fact(dims, fact, derive::kGlobalScope);
      dim_steps[target - 1] = b.add("nonvanishing", {fact_step}, dim_claim(target, w.m),
                                    json{{"m", w.m}, {"target_dim", target}, {"margin", cert::rat_json(w.margin)}});
    } else {
      auto [mult, inputs] = prover.multipliers(dims, w.multipliers);
      dim_steps[target - 1] =
          b.add("lemma2", std::move(inputs),
                dim_claim(target, w.m) + " (separation, r=" + std::to_string(w.r_used) + ")",
                json{{"m", w.m},
                     {"r", w.r_used},
                     {"target_dim", target},
                     {"multipliers", mult},
                     {"margin", cert::rat_json(w.margin)},
                     {"strict", w.strict_margin}});
    }
    rs[target - 1] = w.m;
  }
  add_compose(b, r0_step, r0, dim_steps, rs);
  return b.cert();
}

cert::Certificate solve_concrete(const hrr::ChernData& chern, const SolveOptions& opts) {
  Builder b(cert::Mode::concrete);
  b.cert().chern = chern;
  b.cert().axioms = {"A3", "A4"};
  const int origin = b.add("chern_data", {}, "(-K)^5 = " + chern.k5.get_str() + ", (-K)^3.c2 = " + chern.k3c2.get_str(),
                           json{{"k5", chern.k5.get_str()},
                                {"k3c2", chern.k3c2.get_str()},
                                {"a", cert::rat_json(chern.a())},
                                {"b", cert::rat_json(chern.b())}});
  return solve_concrete_source(Source{chern}, b, origin, opts);
}

cert::Certificate solve_oracle(const H0Oracle& oracle, const SolveOptions& opts) {
  Builder b(cert::Mode::concrete);
  b.cert().axioms = {"A4"};
  json w{{"name", oracle.name}, {"d5", oracle.d5.get_str()}};
  w["closed_form"] = oracle.closed_form ? cert::poly_json(*oracle.closed_form) : json(nullptr);
  if (oracle.bundle) {
    w["twists"] = oracle.bundle->twists;
    w["convention"] = bundle::to_string(oracle.convention);
  }
  const int origin = b.add("oracle", {}, "h0 oracle: " + oracle.name, std::move(w));
  return solve_concrete_source(Source{oracle}, b, origin, opts);
}

cert::Certificate example1_bound(bundle::RankConvention conv, const SolveOptions& opts) {
  return solve_oracle(bundle_oracle(bundle::SplitBundle::example(), conv), opts);
}

}  // namespace fanobound::bounds
