// rational.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/rational.hpp"

namespace nsa::mct {

RationalSeq memoized(RationalSeq s) {
  struct Cache {
    std::vector<Rational> values;
    std::vector<bool> present;
  };
  auto cache = std::make_shared<Cache>();
  auto inner = s.at;
  return RationalSeq{[cache, inner](std::uint64_t i) {
    if (i < cache->present.size() && cache->present[i]) return cache->values[i];
    Rational v = inner(i);
    if (i < (1u << 20)) {
      if (i >= cache->present.size()) {
        cache->present.resize(i + 1, false);
        cache->values.resize(i + 1);
      }
      cache->values[i] = v;
      cache->present[i] = true;
    }
    return v;
  }};
}

bool fast_cauchy_ok(const Real& x, std::uint64_t depth_n, std::uint64_t depth_i) {
  for (std::uint64_t n = 0; n <= depth_n; ++n) {
    Rational xn = x.approx(n);
    Rational bound = pow2_inv(n);
    for (std::uint64_t i = 0; i <= depth_i; ++i) {
      Rational d = xn - x.approx(n + i);
      if (d < 0) d = -d;
      if (!(d < bound)) return false;
    }
  }
  return true;
}

bool real_eq_upto(const Real& x, const Real& y, std::uint64_t depth) {
  for (std::uint64_t n = 0; n <= depth; ++n) {
    Rational d = x.approx(n) - y.approx(n);
    if (d < 0) d = -d;
    if (d > pow2_inv(n)) return false;
  }
  return true;
}

}  // namespace nsa::mct
