#pragma once

#include <random>

#include "fanobound/rational.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240517);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline fanobound::Rat random_rat(long num_span = 1000, long den_max = 997) {
  return fanobound::Rat(fanobound::BigInt(uniform(-num_span, num_span)), fanobound::BigInt(uniform(1, den_max)));
}

}  // namespace testing
