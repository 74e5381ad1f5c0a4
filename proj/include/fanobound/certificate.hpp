#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fanobound/affine.hpp"
#include "fanobound/hrr.hpp"
#include "fanobound/poly.hpp"
#include "fanobound/rational.hpp"

namespace fanobound::cert {

enum class Mode { worst_case, concrete };

struct Step {
  int id = 0;
  std::string rule;
  std::vector<int> inputs;
  std::string claim;
  nlohmann::json witness;
};

/// Replayable derivation of a birationality bound. Serialized with sorted
/// keys; rationals are "p/q" strings (integers may drop "/1").
struct Certificate {
  int version = 1;
  Mode mode = Mode::worst_case;
  std::optional<hrr::ChernData> chern;
  std::vector<std::string> axioms;
  std::vector<Step> steps;
  long r0 = 0;
  std::array<long, 3> r{0, 0, 0};
  long bound = 0;

  const Step* find(int id) const;
};

/// Top-level schema violation or unparsable text.
class MalformedCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Certificate& c);
Certificate from_json(const nlohmann::json& j);

/// Pretty-printed JSON plus trailing newline; byte-stable.
std::string serialize(const Certificate& c);
Certificate parse(const std::string& text);

// Witness encoding helpers shared by prover and verifier.
std::string rat_json(const Rat& r);
Rat rat_from(const nlohmann::json& j);
BigInt int_from(const nlohmann::json& j);
nlohmann::json form_json(const AffineForm& f, bool strict);
AffineForm form_from(const nlohmann::json& j);
nlohmann::json poly_json(const Poly& p);
Poly poly_from(const nlohmann::json& j);

}  // namespace fanobound::cert
