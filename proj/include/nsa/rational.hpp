// rational.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// Exact rationals (canonical lowest terms, positive denominator), rational
// sequences, and fast-Cauchy reals with finite-depth certificate checks.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>

#include "nsa/pairing.hpp"

namespace nsa::mct {

using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(std::int64_t num, std::int64_t den) {
  return Rational(num, den);  // cpp_rational canonicalizes on construction
}

inline BigNat numerator_nat(const Rational& q) {
  if (q < 0) throw std::domain_error("coded rationals must be nonnegative");
  return BigNat(boost::multiprecision::numerator(q));
}

// Cantor code of a nonnegative rational in lowest terms.
inline BigNat code_rational(const Rational& q) {
  return cantor_pair(numerator_nat(q), BigNat(boost::multiprecision::denominator(q)));
}

inline Rational decode_rational(const BigNat& code) {
  auto [num, den] = cantor_unpair(code);
  if (den == 0) throw std::domain_error("rational code has zero denominator");
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

// 2^-n as an exact rational.
inline Rational pow2_inv(std::uint64_t n) {
  boost::multiprecision::cpp_int d = 1;
  d <<= n;
  return Rational(1, d);
}

// A total sequence of rationals; evaluation is pure.  memoized() wraps a
// sequence with a per-object cache (not thread-safe; use one per worker).
struct RationalSeq {
  std::function<Rational(std::uint64_t)> at;
  Rational operator()(std::uint64_t i) const { return at(i); }
};

RationalSeq memoized(RationalSeq s);

// A real as a fast-converging Cauchy sequence of rational approximations:
// |approx(n) - approx(n+i)| < 2^-n, checkable to any finite depth.
struct Real {
  std::function<Rational(std::uint64_t)> approx;
};

// Checks the fast-Cauchy certificate for all n <= depth_n, i <= depth_i.
bool fast_cauchy_ok(const Real& x, std::uint64_t depth_n, std::uint64_t depth_i);

// Equality of reals at finite depth: |x_n - y_n| <= 2^-n for n <= depth.
bool real_eq_upto(const Real& x, const Real& y, std::uint64_t depth);

}  // namespace nsa::mct
