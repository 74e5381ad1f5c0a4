#pragma once

#include <array>

#include "fanobound/audit.hpp"
#include "fanobound/derive.hpp"

namespace fanobound::derive {

/// Structured outcome of the P(3) >= 7 replay, items (i) through (vi).
struct Prop1Report {
  AuditReport entries;

  /// P(3) lower bounds for P(1) = 0, 1, 2 with P(2) >= P(1).
  std::array<Fact, 3> p3_given_p1;
  /// P(2) lower bound for P(1) = 3.
  Fact p2_given_p1_3;

  /// (v): the point forced by P(1) = 3, P(2) = 6.
  bool v_forced = false;
  Rat v_a, v_b, v_p3;
  /// The published point and the P(2) it actually gives.
  Rat paper_a, paper_b, paper_p3, paper_p2;

  /// Engine-completed tail branch P(1) >= 4 and the merged global bound.
  Fact tail_branch;
  Fact merged;

  MonotoneResult monotone;
};

Prop1Report prop1_replay(const AxiomConfig& config = {}, long m_cert = 64);

}  // namespace fanobound::derive
