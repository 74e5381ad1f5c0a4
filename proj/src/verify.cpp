#include "fanobound/verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "fanobound/bundle.hpp"
#include "fanobound/hrr.hpp"

namespace fanobound::verify {

using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Row {
  AffineForm form;
  bool strict = false;
  std::string scope;
};

struct FactRec {
  long m = 0;
  Rat bound;
  std::string scope;
};

struct Combination {
  AffineForm sum;
  bool strict_used = false;
};

const Poly& next_shift() {
  static const Poly p = Poly::linear(1, 1);
  return p;
}

Poly forward_difference(const Poly& p) { return p.compose(next_shift()) - p; }

bool all_nonneg(const Poly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rat& c) { return c.sign() >= 0; });
}

class Checker {
 public:
  explicit Checker(const cert::Certificate& c) : c_(c) {}

  Verdict run() {
    int prev = 0;
    for (const cert::Step& s : c_.steps) {
      step_ = &s;
      try {
        if (s.id <= prev) throw Failure("step ids must be strictly increasing");
        for (int in : s.inputs) {
          if (!seen_.contains(in)) throw Failure("input " + std::to_string(in) + " is not an earlier step");
        }
        if (!s.witness.is_object()) throw Failure("witness must be an object");
        dispatch(s);
      } catch (const Failure& f) {
        return {false, s.id, f.what()};
      } catch (const std::exception& e) {
        return {false, s.id, std::string("bad witness: ") + e.what()};
      }
      seen_.insert(s.id);
      prev = s.id;
    }
    if (!compose_) return {false, 0, "no compose_bound step"};
    return {true, 0, ""};
  }

 private:
  void dispatch(const cert::Step& s) {
    const bool worst = c_.mode == cert::Mode::worst_case;
    if (s.rule == "axiom" && worst) return axiom();
    if (s.rule == "split_on_p1" && worst) return split();
    if (s.rule == "hypothesis" && worst) return hypothesis();
    if (s.rule == "derive_lower_bound" && worst) return derive_bound();
    if (s.rule == "merge_branches" && worst) return merge();
    if (s.rule == "fact_to_constraint" && worst) return fact_row();
    if (s.rule == "monotone_step") return worst ? monotone_step_worst() : monotone_step_concrete();
    if (s.rule == "monotone_tail") return worst ? monotone_tail_worst() : monotone_tail_concrete();
    if (s.rule == "certify_r0") return certify_r0();
    if (s.rule == "nonvanishing") return nonvanishing();
    if (s.rule == "lemma2") return worst ? lemma2_worst() : lemma2_concrete();
    if (s.rule == "compose_bound") return compose();
    if (s.rule == "chern_data" && !worst) return chern_data();
    if (s.rule == "oracle" && !worst) return oracle();
    if (s.rule == "p_value" && !worst) return p_value();
    throw Failure("rule \"" + s.rule + "\" is not valid in " + (worst ? "worst_case" : "concrete") + " mode");
  }

  // witness accessors
  const json& field(const char* key) const {
    if (!step_->witness.contains(key)) throw Failure(std::string("witness lacks \"") + key + "\"");
    return step_->witness.at(key);
  }
  long long_field(const char* key) const {
    const json& j = field(key);
    if (!j.is_number_integer()) throw Failure(std::string("\"") + key + "\" must be an integer");
    return j.get<long>();
  }
  Rat rat_field(const char* key) const { return cert::rat_from(field(key)); }
  std::string str_field(const char* key) const {
    const json& j = field(key);
    if (!j.is_string()) throw Failure(std::string("\"") + key + "\" must be a string");
    return j.get<std::string>();
  }
  bool bool_field(const char* key) const {
    const json& j = field(key);
    if (!j.is_boolean()) throw Failure(std::string("\"") + key + "\" must be a boolean");
    return j.get<bool>();
  }

  bool has_input(int id) const {
    return std::find(step_->inputs.begin(), step_->inputs.end(), id) != step_->inputs.end();
  }
  bool has_axiom(const std::string& name) const {
    return std::find(c_.axioms.begin(), c_.axioms.end(), name) != c_.axioms.end();
  }

  void register_row(const AffineForm& form, bool strict, const std::string& scope) {
    rows_[step_->id] = {form, strict, scope};
  }

  Row read_row() const {
    const json& j = field("constraint");
    const AffineForm form = cert::form_from(j);
    const bool strict = j.contains("strict") && j.at("strict").is_boolean() && j.at("strict").get<bool>();
    return {form, strict, str_field("scope")};
  }

  Combination combine(const char* key, const std::string& scope) const {
    const json& arr = field(key);
    if (!arr.is_array()) throw Failure("multipliers must be an array");
    Combination out;
    for (const auto& entry : arr) {
      const int id = entry.at("step").get<int>();
      const Rat lambda = cert::rat_from(entry.at("value"));
      if (lambda.sign() < 0) throw Failure("negative multiplier on step " + std::to_string(id));
      if (!has_input(id)) throw Failure("multiplier step " + std::to_string(id) + " is not an input");
      const auto it = rows_.find(id);
      if (it == rows_.end()) throw Failure("multiplier step " + std::to_string(id) + " is not a constraint");
      const Row& row = it->second;
      if (row.scope != "global" && row.scope != scope) {
        throw Failure("constraint " + std::to_string(id) + " belongs to branch " + row.scope);
      }
      out.sum += row.form * lambda;
      if (row.strict && lambda.sign() > 0) out.strict_used = true;
    }
    return out;
  }

  // target - sum(lambda g) must be constant; returns that constant.
  Rat residual_constant(const AffineForm& target, const Combination& comb) const {
    const AffineForm r = target - comb.sum;
    if (!r.is_constant()) throw Failure("Farkas identity fails: residual " + r.to_string() + " is not constant");
    return r.constant;
  }

  // margin <= c, and the target is positive: margin > 0, or margin == 0 with
  // a strict row carrying weight.
  void check_positive(const Rat& c, const Rat& margin, bool strict_used) const {
    if (margin > c) throw Failure("margin " + margin.to_string() + " exceeds certified " + c.to_string());
    if (margin.sign() > 0) return;
    if (margin.is_zero() && strict_used) return;
    throw Failure("margin " + margin.to_string() + " does not certify positivity");
  }

  void axiom() {
    if (!step_->inputs.empty()) throw Failure("axiom takes no inputs");
    const std::string name = str_field("name");
    const Row row = read_row();
    AffineForm expected;
    std::string family = name;
    if (name == "A1") {
      expected = {1, 0, Rat(-1, 720)};
    } else if (name == "A5") {
      expected = hrr::p_affine(2) - hrr::p_affine(1);
    } else if (name.starts_with("A4:m=")) {
      const long m = std::stol(name.substr(5));
      if (m < 0) throw Failure("A4 instance needs m >= 0");
      expected = hrr::p_affine(m);
      family = "A4";
    } else {
      throw Failure("unknown axiom " + name);
    }
    if (!has_axiom(family)) throw Failure(family + " is not among the certificate axioms");
    if (row.strict || row.scope != "global") throw Failure("axiom rows are global and non-strict");
    if (!row.form.positively_proportional(expected)) throw Failure("constraint does not match " + name);
    register_row(row.form, false, "global");
  }

  void split() {
    if (!has_axiom("A3") || !has_axiom("A4")) throw Failure("case split on P(1) needs A3 and A4");
    const long lmax = long_field("lmax");
    if (lmax < 0) throw Failure("lmax must be >= 0");
    std::vector<std::string> expected;
    for (long l = 0; l <= lmax; ++l) expected.push_back("P(1)=" + std::to_string(l));
    expected.push_back("P(1)>=" + std::to_string(lmax + 1));
    const auto labels = field("branches").get<std::vector<std::string>>();
    if (labels != expected) throw Failure("branches do not partition the nonnegative integers");
    splits_[step_->id] = labels;
  }

  void hypothesis() {
    if (step_->inputs.size() != 1 || !splits_.contains(step_->inputs[0])) {
      throw Failure("hypothesis needs exactly its split as input");
    }
    const auto& labels = splits_.at(step_->inputs[0]);
    const std::string branch = str_field("branch");
    if (std::find(labels.begin(), labels.end(), branch) == labels.end()) throw Failure("unknown branch " + branch);
    const Row row = read_row();
    if (row.scope != branch || row.strict) throw Failure("hypothesis must be non-strict and scoped to its branch");
    const AffineForm p1 = hrr::p_affine(1);
    bool ok = false;
    if (branch.starts_with("P(1)>=")) {
      const Rat t = Rat::parse(branch.substr(6));
      ok = row.form.positively_proportional(p1 - AffineForm::constant_form(t));
    } else {
      const Rat l = Rat::parse(branch.substr(5));
      const AffineForm f = p1 - AffineForm::constant_form(l);
      ok = row.form.positively_proportional(f) || row.form.positively_proportional(-f);
    }
    if (!ok) throw Failure("constraint does not express " + branch);
    register_row(row.form, false, branch);
  }

  void derive_bound() {
    const long m = long_field("m");
    const std::string scope = str_field("scope");
    const Combination comb = combine("multipliers", scope);
    const Rat c = residual_constant(hrr::p_affine(m), comb);
    const Rat raw = rat_field("raw_bound");
    const bool raw_strict = bool_field("raw_strict");
    if (raw > c || (raw == c && raw_strict && !comb.strict_used)) {
      throw Failure("raw bound " + raw.to_string() + " not implied (certified " + c.to_string() + ")");
    }
    Rat allowed = raw;
    if (has_axiom("A3")) allowed = raw_strict ? Rat(BigInt(raw.floor() + 1)) : Rat(raw.ceil());
    const Rat bound = rat_field("bound");
    if (bound > allowed) throw Failure("bound " + bound.to_string() + " exceeds " + allowed.to_string());
    facts_[step_->id] = {m, bound, scope};
  }

  void merge() {
    if (step_->inputs.empty() || !splits_.contains(step_->inputs[0])) throw Failure("first input must be the split");
    const auto& labels = splits_.at(step_->inputs[0]);
    const long m = long_field("m");
    std::optional<Rat> lowest;
    for (const std::string& label : labels) {
      int count = 0;
      for (std::size_t i = 1; i < step_->inputs.size(); ++i) {
        const auto it = facts_.find(step_->inputs[i]);
        if (it == facts_.end() || it->second.scope != label) continue;
        if (it->second.m != m) throw Failure("branch fact for " + label + " is about a different m");
        ++count;
        lowest = lowest ? min(*lowest, it->second.bound) : it->second.bound;
      }
      if (count != 1) throw Failure("branch " + label + " needs exactly one fact");
    }
    const Rat bound = rat_field("bound");
    if (!lowest || bound > *lowest) throw Failure("merged bound exceeds a branch bound");
    facts_[step_->id] = {m, bound, "global"};
  }

  const FactRec& input_fact(std::size_t index) const {
    if (index >= step_->inputs.size()) throw Failure("missing fact input");
    const auto it = facts_.find(step_->inputs[index]);
    if (it == facts_.end()) throw Failure("input " + std::to_string(step_->inputs[index]) + " is not a fact");
    return it->second;
  }

  void fact_row() {
    const FactRec& fact = input_fact(0);
    if (fact.scope != "global") throw Failure("only global facts become constraints");
    const long m = long_field("m");
    const Rat bound = rat_field("bound");
    if (m != fact.m || bound > fact.bound) throw Failure("constraint is stronger than its fact");
    const Row row = read_row();
    if (row.strict || row.scope != "global") throw Failure("fact constraints are global and non-strict");
    if (!row.form.positively_proportional(hrr::p_affine(m) - AffineForm::constant_form(bound))) {
      throw Failure("constraint does not express P(" + std::to_string(m) + ") >= " + bound.to_string());
    }
    register_row(row.form, false, "global");
  }

  void monotone_step_worst() {
    const long m = long_field("m");
    const Combination comb = combine("multipliers", "global");
    const Rat c = residual_constant(hrr::p_affine(m + 1) - hrr::p_affine(m), comb);
    check_positive(c, rat_field("margin"), comb.strict_used);
    mono_[step_->id] = m;
  }

  const BigInt& value_input(long m) const {
    for (int id : step_->inputs) {
      const auto it = values_.find(id);
      if (it != values_.end() && it->second.first == m) return it->second.second;
    }
    throw Failure("no p_value input for m=" + std::to_string(m));
  }

  void monotone_step_concrete() {
    const long m = long_field("m");
    const BigInt diff = value_input(m + 1) - value_input(m);
    const Rat margin = rat_field("margin");
    if (margin != Rat(diff)) throw Failure("margin " + margin.to_string() + " != " + diff.get_str());
    if (diff <= 0) throw Failure("P(m+1) - P(m) = " + diff.get_str() + " is not positive");
    mono_[step_->id] = m;
  }

  void monotone_tail_worst() {
    const long from = long_field("from");
    const hrr::HrrPolys& p = hrr::p_polys();
    Poly da = forward_difference(p.coeff_a);
    Poly db = forward_difference(p.coeff_b);
    Poly dc = forward_difference(p.constant);
    const json& arr = field("multipliers");
    if (!arr.is_array()) throw Failure("multipliers must be an array");
    for (const auto& entry : arr) {
      const int id = entry.at("step").get<int>();
      const Poly lambda = cert::poly_from(entry.at("poly"));
      if (!has_input(id)) throw Failure("multiplier step " + std::to_string(id) + " is not an input");
      const auto it = rows_.find(id);
      if (it == rows_.end() || it->second.scope != "global") {
        throw Failure("step " + std::to_string(id) + " is not a global constraint");
      }
      if (!all_nonneg(lambda.shifted(from))) throw Failure("multiplier polynomial may go negative");
      const AffineForm& g = it->second.form;
      da -= lambda * g.coeff_a;
      db -= lambda * g.coeff_b;
      dc -= lambda * g.constant;
    }
    if (!da.is_zero() || !db.is_zero()) throw Failure("polynomial Farkas identity fails");
    if (dc != cert::poly_from(field("residual"))) throw Failure("residual does not match");
    const Poly shifted = dc.shifted(from);
    if (!all_nonneg(shifted) || shifted(0).sign() <= 0) throw Failure("residual not certified positive");
    tails_[step_->id] = from;
  }

  void monotone_tail_concrete() {
    const long from = long_field("from");
    std::optional<Poly> p;
    if (ab_) p = hrr::p_poly(ab_->first, ab_->second);
    else p = closed_form_;
    if (!p) throw Failure("no closed form to certify the tail");
    const Poly diff = forward_difference(*p);
    if (diff != cert::poly_from(field("difference"))) throw Failure("difference polynomial does not match");
    const Poly shifted = diff.shifted(from);
    if (shifted != cert::poly_from(field("shifted"))) throw Failure("shifted polynomial does not match");
    if (!all_nonneg(shifted) || shifted(0).sign() <= 0) throw Failure("tail not certified positive");
    tails_[step_->id] = from;
  }

  void certify_r0() {
    const long r0 = long_field("r0");
    if (r0 < 3) throw Failure("r0 must be >= 3");
    bool floor_ok = false;
    std::set<long> covered;
    std::optional<long> tail_from;
    for (int id : step_->inputs) {
      if (const auto f = facts_.find(id); f != facts_.end()) {
        floor_ok |= f->second.scope == "global" && f->second.m == r0 && f->second.bound >= 1;
      } else if (const auto v = values_.find(id); v != values_.end()) {
        floor_ok |= v->second.first == r0 && v->second.second >= 1;
      } else if (const auto s = mono_.find(id); s != mono_.end()) {
        covered.insert(s->second);
      } else if (const auto t = tails_.find(id); t != tails_.end()) {
        tail_from = tail_from ? std::min(*tail_from, t->second) : t->second;
      }
    }
    if (!floor_ok) throw Failure("no input shows P(" + std::to_string(r0) + ") >= 1");
    if (!tail_from) throw Failure("no monotone tail");
    for (long m = r0; m < *tail_from; ++m) {
      if (!covered.contains(m)) throw Failure("P(" + std::to_string(m + 1) + ") > P(" + std::to_string(m) + ") not shown");
    }
    r0s_[step_->id] = r0;
  }

  void nonvanishing() {
    const long m = long_field("m");
    if (long_field("target_dim") != 1) throw Failure("nonvanishing only gives dim >= 1");
    if (step_->inputs.size() != 1) throw Failure("nonvanishing takes one input");
    Rat value;
    if (const auto f = facts_.find(step_->inputs[0]); f != facts_.end()) {
      if (f->second.scope != "global" || f->second.m != m) throw Failure("fact is not a global bound on P(m)");
      value = f->second.bound;
    } else {
      value = Rat(value_input(m));
    }
    if (value < 2) throw Failure("need P(m) >= 2, have " + value.to_string());
    if (rat_field("margin") != value - 1) throw Failure("margin must be P(m) - 1");
    dims_[step_->id] = {1, m};
  }

  void lemma2_common(long& m, int& target, int& r) const {
    m = long_field("m");
    r = static_cast<int>(long_field("r"));
    target = static_cast<int>(long_field("target_dim"));
    if (m < 1 || r < 0) throw Failure("threshold needs m >= 1, r >= 0");
    if (target < 1 || target > r + 1) throw Failure("target_dim must lie in [1, r+1]");
  }

  void lemma2_worst() {
    long m;
    int target, r;
    lemma2_common(m, target, r);
    const BigInt scale = ipow(BigInt(m), static_cast<unsigned long>(r)) * 720;
    const AffineForm slack = hrr::p_affine(m) - AffineForm{Rat(scale), 0, r};
    const Combination comb = combine("multipliers", "global");
    check_positive(residual_constant(slack, comb), rat_field("margin"), comb.strict_used);
    dims_[step_->id] = {target, m};
  }

  void lemma2_concrete() {
    long m;
    int target, r;
    lemma2_common(m, target, r);
    if (!d5_) throw Failure("no (-K)^5 established");
    if (cert::int_from(field("d5")) != *d5_) throw Failure("d5 disagrees with the data");
    const BigInt threshold = ipow(BigInt(m), static_cast<unsigned long>(r)) * *d5_ + r;
    if (cert::int_from(field("threshold")) != threshold) throw Failure("threshold must be m^r (-K)^5 + r");
    const BigInt margin = value_input(m) - threshold;
    if (rat_field("margin") != Rat(margin)) throw Failure("margin must be h0 - threshold");
    if (margin <= 0) throw Failure("h0 does not exceed the threshold");
    dims_[step_->id] = {target, m};
  }

  void compose() {
    const long r0 = long_field("r0");
    const auto rs = field("r").get<std::array<long, 3>>();
    const long bound = long_field("bound");
    if (step_->inputs.size() != 4) throw Failure("compose_bound takes r0 and three dimension steps");
    const auto r0_it = r0s_.find(step_->inputs[0]);
    if (r0_it == r0s_.end() || r0_it->second != r0) throw Failure("first input must certify r0");
    for (int i = 0; i < 3; ++i) {
      const auto d = dims_.find(step_->inputs[i + 1]);
      if (d == dims_.end()) throw Failure("input " + std::to_string(step_->inputs[i + 1]) + " is not a dimension step");
      if (d->second.first < i + 1 || d->second.second != rs[i]) {
        throw Failure("r" + std::to_string(i + 1) + " is not witnessed");
      }
    }
    if (bound != r0 + rs[0] + rs[1] + rs[2]) throw Failure("bound != r0 + r1 + r2 + r3");
    if (c_.r0 != r0 || c_.r != rs || c_.bound != bound) {
      throw Failure("top-level r0/r/bound disagree with the composed bound " + std::to_string(bound));
    }
    compose_ = true;
  }

  void chern_data() {
    if (!c_.chern) throw Failure("certificate carries no Chern data");
    if (cert::int_from(field("k5")) != c_.chern->k5 || cert::int_from(field("k3c2")) != c_.chern->k3c2) {
      throw Failure("Chern data disagrees with the top level");
    }
    const Rat a = c_.chern->a();
    const Rat b = c_.chern->b();
    if (rat_field("a") != a || rat_field("b") != b) throw Failure("a, b must be k5/720 and k3c2/144");
    ab_ = {a, b};
    d5_ = c_.chern->k5;
    origins_.insert(step_->id);
  }

  void oracle() {
    if (!step_->witness.contains("twists")) throw Failure("oracle without a bundle cannot be replayed");
    bundle::SplitBundle b;
    b.twists = field("twists").get<std::array<long, 5>>();
    conv_ = bundle::parse_convention(str_field("convention"));
    const BigInt d5 = cert::int_from(field("d5"));
    if (d5 != bundle::anticanonical_volume(b)) throw Failure("d5 is not (-K)^5 of the bundle");
    if (!field("closed_form").is_null()) closed_form_ = cert::poly_from(field("closed_form"));
    bundle_ = b;
    d5_ = d5;
    origins_.insert(step_->id);
  }

  void p_value() {
    if (step_->inputs.size() != 1 || !origins_.contains(step_->inputs[0])) {
      throw Failure("p_value needs the data step as input");
    }
    const long m = long_field("m");
    const BigInt value = cert::int_from(field("value"));
    if (ab_) {
      const Rat p = hrr::p_affine(m).eval(ab_->first, ab_->second);
      if (p != Rat(value)) throw Failure("P(" + std::to_string(m) + ") = " + p.to_string());
      if (m >= 0 && value < 0) throw Failure("negative P(m) for m >= 0");
    } else {
      if (m < 1) throw Failure("oracle values need m >= 1");
      const BigInt h0 = bundle::h0_anti(*bundle_, m, conv_);
      if (h0 != value) throw Failure("h0(-" + std::to_string(m) + "K) = " + h0.get_str());
      if (closed_form_ && (*closed_form_)(m) != Rat(value)) throw Failure("closed form disagrees at m=" + std::to_string(m));
    }
    values_[step_->id] = {m, value};
  }

  const cert::Certificate& c_;
  const cert::Step* step_ = nullptr;
  std::set<int> seen_;
  std::map<int, Row> rows_;
  std::map<int, FactRec> facts_;
  std::map<int, std::vector<std::string>> splits_;
  std::map<int, long> mono_;
  std::map<int, long> tails_;
  std::map<int, long> r0s_;
  std::map<int, std::pair<int, long>> dims_;  // target, m
  std::map<int, std::pair<long, BigInt>> values_;
  std::set<int> origins_;
  std::optional<std::pair<Rat, Rat>> ab_;
  std::optional<Poly> closed_form_;
  std::optional<bundle::SplitBundle> bundle_;
  bundle::RankConvention conv_ = bundle::RankConvention::standard;
  std::optional<BigInt> d5_;
  bool compose_ = false;
};

}  // namespace

Verdict verify(const cert::Certificate& c) { return Checker(c).run(); }

}  // namespace fanobound::verify
