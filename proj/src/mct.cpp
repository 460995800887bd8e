// mct.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/mct.hpp"

#include <stdexcept>

namespace nsa::mct {

RationalSeq t_of_f(std::function<std::uint64_t(std::uint64_t)> f) {
  return RationalSeq{[f = std::move(f)](std::uint64_t k) -> Rational {
    for (std::uint64_t i = 0; i <= k; ++i)
      if (f(i) == 0) return Rational(1) - pow2_inv(k);  // sum_{i=1..k} 2^-i
    return Rational(0);
  }};
}

BigNat t_of_f_code(std::function<std::uint64_t(std::uint64_t)> f, std::uint64_t k) {
  return code_rational(t_of_f(std::move(f))(k));
}

ModulusResult brute_modulus(const RationalSeq& c, std::uint64_t k, std::uint64_t cap) {
  if (k == 0) throw std::invalid_argument("brute_modulus needs k >= 1");
  Rational prev = c(0);
  if (prev < 0 || prev > 1) return {ModulusResult::Status::NotMonotoneWithinCap, 0};
  for (std::uint64_t i = 0; i < cap; ++i) {
    Rational next = c(i + 1);
    if (next < prev || next > 1)
      return {ModulusResult::Status::NotMonotoneWithinCap, 0};
    prev = next;
  }
  Rational top = c(cap);
  Rational bound = Rational(1, k);
  // by monotonicity the widest pair beyond K is (K, cap)
  for (std::uint64_t K = 0; K <= cap; ++K)
    if (top - c(K) <= bound) return {ModulusResult::Status::Found, K};
  return {ModulusResult::Status::NotFoundWithinCap, 0};
}

ConvergenceModulus brute_modulus_operator(std::uint64_t cap) {
  return [cap](const RationalSeq& c, std::uint64_t k) -> std::uint64_t {
    ModulusResult r = brute_modulus(c, k, cap);
    if (!r.found()) throw std::runtime_error("modulus search failed within cap");
    return r.value;
  };
}

std::uint64_t MuOperator::operator()(
    const std::function<std::uint64_t(std::uint64_t)>& g) const {
  for (std::uint64_t j = 0; j <= cap; ++j)
    if (g(j) == 0) return j;
  return 0;
}

std::uint64_t mu_from_mct(const ConvergenceModulus& psi,
                          std::function<std::uint64_t(std::uint64_t)> f) {
  RationalSeq c = memoized(t_of_f(std::move(f)));
  // every jump of t_of_f has height at least 1/2 > 1/3
  return psi(c, 3);
}

MctFromMuResult mct_from_mu(const MuOperator& mu, const RationalSeq& c, std::uint64_t k,
                            std::uint64_t n_cap, std::uint64_t mono_check_cap) {
  if (k == 0) throw std::invalid_argument("mct_from_mu needs k >= 1");
  RationalSeq cc = memoized(c);
  Rational prev = cc(0);
  if (prev < 0 || prev > 1) return {MctFromMuResult::Status::NotMonotone, 0};
  for (std::uint64_t i = 0; i < mono_check_cap; ++i) {
    Rational next = cc(i + 1);
    if (next < prev || next > 1) return {MctFromMuResult::Status::NotMonotone, 0};
    prev = next;
  }
  Rational bound = Rational(1, k);
  for (std::uint64_t n = 0; n <= n_cap; ++n) {
    auto g_n = [&](std::uint64_t j) -> std::uint64_t {
      auto [N, M] = cantor_unpair_u64(j);
      if (N < n || M < n) return 1;
      Rational d = cc(N) - cc(M);
      if (d < 0) d = -d;
      return d > bound ? 0 : 1;
    };
    if (g_n(mu(g_n)) != 0) return {MctFromMuResult::Status::Found, n};
  }
  return {MctFromMuResult::Status::SearchCapExceeded, 0};
}

}  // namespace nsa::mct
