#pragma once

#include <string>

#include "fanobound/certificate.hpp"

namespace fanobound::verify {

struct Verdict {
  bool valid = false;
  /// First offending step, or 0 for a top-level field.
  int step = 0;
  std::string reason;
};

/// Replays every step of c from its witness alone: Farkas identities by
/// substitution, polynomial identities coefficientwise, concrete values
/// recomputed from the Chern data or the bundle. Does not re-run any search.
Verdict verify(const cert::Certificate& c);

}  // namespace fanobound::verify
