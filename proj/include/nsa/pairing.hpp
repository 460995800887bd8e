// pairing.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>

namespace nsa {

using BigNat = boost::multiprecision::cpp_int;

// Cantor pairing, the repo-wide coding of pairs of naturals:
//   pair(a, b) = (a + b)(a + b + 1)/2 + b
// pair(0,0)=0, pair(1,0)=1, pair(0,1)=2, pair(2,0)=3, pair(1,1)=4, ...
inline BigNat cantor_pair(const BigNat& a, const BigNat& b) {
  BigNat s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<BigNat, BigNat> cantor_unpair(const BigNat& z) {
  // w = floor((sqrt(8z+1) - 1) / 2), then b = z - w(w+1)/2, a = w - b.
  BigNat v = 8 * z + 1;
  BigNat w = (boost::multiprecision::sqrt(v) - 1) / 2;
  BigNat t = w * (w + 1) / 2;
  BigNat b = z - t;
  return {w - b, b};
}

inline std::uint64_t cantor_pair_u64(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  unsigned __int128 z = s * (s + 1) / 2 + b;
  return static_cast<std::uint64_t>(z);
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair_u64(std::uint64_t z) {
  unsigned __int128 v = static_cast<unsigned __int128>(z) * 8 + 1;
  std::uint64_t r = static_cast<std::uint64_t>(sqrtl(static_cast<long double>(v)));
  // correct the floating sqrt to an exact integer sqrt of v
  while (static_cast<unsigned __int128>(r) * r > v) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) ++r;
  std::uint64_t w = (r - 1) / 2;
  std::uint64_t t = w * (w + 1) / 2;
  std::uint64_t b = z - t;
  return {w - b, b};
}

// Rationals are coded as cantor_pair(numerator, denominator) with the
// fraction in canonical lowest terms and denominator > 0.
inline std::uint64_t code_rational_u64(std::uint64_t num, std::uint64_t den) {
  return cantor_pair_u64(num, den);
}

}  // namespace nsa
