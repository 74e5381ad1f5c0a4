#include "fanobound/certificate.hpp"

namespace fanobound::cert {

using nlohmann::json;

namespace {

json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedCertificate(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw MalformedCertificate(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

const Step* Certificate::find(int id) const {
  for (const auto& s : steps) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::string rat_json(const Rat& r) { return r.to_string(); }

Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  return Rat::parse(j.get<std::string>());
}

BigInt int_from(const json& j) {
  const Rat r = rat_from(j);
  if (!r.is_integer()) throw std::invalid_argument("expected an integer, got " + r.to_string());
  return r.to_integer();
}

json form_json(const AffineForm& f, bool strict) {
  return json{{"a", rat_json(f.coeff_a)},
              {"b", rat_json(f.coeff_b)},
              {"c", rat_json(f.constant)},
              {"strict", strict}};
}

AffineForm form_from(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
    throw std::invalid_argument("constraint needs a, b, c");
  return {rat_from(j.at("a")), rat_from(j.at("b")), rat_from(j.at("c"))};
}

json poly_json(const Poly& p) {
  json out = json::array();
  for (const Rat& c : p.coeffs()) out.push_back(rat_json(c));
  return out;
}

Poly poly_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a coefficient array");
  std::vector<Rat> c;
  for (const auto& x : j) c.push_back(rat_from(x));
  return Poly(std::move(c));
}

json to_json(const Certificate& c) {
  json steps = json::array();
  for (const Step& s : c.steps) {
    steps.push_back(json{{"id", s.id},
                         {"rule", s.rule},
                         {"inputs", s.inputs},
                         {"claim", s.claim},
                         {"witness", s.witness.is_null() ? json::object() : s.witness}});
  }
  json chern = nullptr;
  if (c.chern) chern = json{{"k5", bigint_json(c.chern->k5)}, {"k3c2", bigint_json(c.chern->k3c2)}};
  return json{{"version", c.version},
              {"mode", c.mode == Mode::worst_case ? "worst_case" : "concrete"},
              {"chern", chern},
              {"axioms", c.axioms},
              {"steps", steps},
              {"r0", c.r0},
              {"r", c.r},
              {"bound", c.bound}};
}

Certificate from_json(const json& j) {
  if (!j.is_object()) throw MalformedCertificate("certificate must be a JSON object");
  Certificate c;
  c.version = require<int>(j, "version");
  const auto mode = require<std::string>(j, "mode");
  if (mode == "worst_case") c.mode = Mode::worst_case;
  else if (mode == "concrete") c.mode = Mode::concrete;
  else throw MalformedCertificate("unknown mode \"" + mode + "\"");

  if (!j.contains("chern")) throw MalformedCertificate("missing field \"chern\"");
  if (!j.at("chern").is_null()) {
    try {
      c.chern = hrr::ChernData(int_from(j.at("chern").at("k5")), int_from(j.at("chern").at("k3c2")));
    } catch (const std::exception& e) {
      throw MalformedCertificate(std::string("bad chern data: ") + e.what());
    }
  }
  c.axioms = require<std::vector<std::string>>(j, "axioms");
  c.r0 = require<long>(j, "r0");
  c.r = require<std::array<long, 3>>(j, "r");
  c.bound = require<long>(j, "bound");

  if (!j.contains("steps") || !j.at("steps").is_array()) throw MalformedCertificate("\"steps\" must be an array");
  for (const auto& s : j.at("steps")) {
    Step step;
    step.id = require<int>(s, "id");
    step.rule = require<std::string>(s, "rule");
    if (s.contains("inputs")) {
      try {
        step.inputs = s.at("inputs").get<std::vector<int>>();
      } catch (const json::exception&) {
        throw MalformedCertificate("step " + std::to_string(step.id) + ": inputs must be integers");
      }
    }
    if (s.contains("claim") && s.at("claim").is_string()) step.claim = s.at("claim").get<std::string>();
    if (s.contains("witness")) step.witness = s.at("witness");
    c.steps.push_back(std::move(step));
  }
  return c;
}

std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

Certificate parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedCertificate(std::string("unparsable JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace fanobound::cert
