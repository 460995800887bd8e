// mct.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The monotone-convergence case study: the extracted sequence builder
// t_of_f, brute-force convergence moduli, the search operator interface,
// and the two transfer directions between moduli and halting bounds.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nsa/rational.hpp"

namespace nsa::mct {

// t_of_f(f)(k) = 0                     while f is nonzero up to k,
//              = sum_{i=1..k} 2^-i     from the first zero of f onward.
// Weakly increasing with values in [0,1]; a zero of f at m forces a jump
// of at least 1/2 at max(m,1).
RationalSeq t_of_f(std::function<std::uint64_t(std::uint64_t)> f);

// The coded value of t_of_f at k: pair(0,1) = 2 or pair(2^k-1, 2^k) = 2^(2k+1).
BigNat t_of_f_code(std::function<std::uint64_t(std::uint64_t)> f, std::uint64_t k);

// ------------------------------------------------------------- modulus ----
struct ModulusResult {
  enum class Status { Found, NotFoundWithinCap, NotMonotoneWithinCap };
  Status status;
  std::uint64_t value = 0;  // least K with c(cap) - c(K) <= 1/k when Found
  bool found() const { return status == Status::Found; }
};

// Independent oracle: least K <= cap such that all pairs beyond K are within
// 1/k, using monotonicity (it suffices to compare against c(cap)).
// Requires k >= 1 and c weakly increasing and bounded by 1 on [0, cap].
ModulusResult brute_modulus(const RationalSeq& c, std::uint64_t k, std::uint64_t cap);

// A modulus-of-convergence interface: K(c, k) with the contract that all
// pairs beyond K(c, k) lie within 1/k of each other.
using ConvergenceModulus = std::function<std::uint64_t(const RationalSeq&, std::uint64_t)>;

// The brute-force modulus as a ConvergenceModulus (throws when the search
// fails within the cap).
ConvergenceModulus brute_modulus_operator(std::uint64_t cap);

// ------------------------------------------------------ search operator ----
// A zero-finding operator: if g has a zero then g(mu(g)) = 0.  The shipped
// instantiation is bounded search: first zero at or below cap, else 0; the
// contract is only guaranteed on inputs whose least zero is within the cap.
struct MuOperator {
  std::uint64_t cap;
  std::uint64_t operator()(const std::function<std::uint64_t(std::uint64_t)>& g) const;
};

// ------------------------------------------------------------ transfers ----
// Modulus-to-bound: n = Psi(t_of_f(f), 3); whenever f has a zero at all, it
// has one at or below n.  (3 is the least k with 1/k below the jump 1/2.)
std::uint64_t mu_from_mct(const ConvergenceModulus& psi,
                          std::function<std::uint64_t(std::uint64_t)> f);

// Bound-to-modulus: the least n such that mu certifies that no pair beyond n
// differs by more than 1/k.  g_n(j) decodes j as a pair (N, M) via the
// repo-wide pairing.  Requires c weakly increasing and bounded (checked up
// to mono_check_cap).
struct MctFromMuResult {
  enum class Status { Found, SearchCapExceeded, NotMonotone };
  Status status;
  std::uint64_t value = 0;
  bool found() const { return status == Status::Found; }
};
MctFromMuResult mct_from_mu(const MuOperator& mu, const RationalSeq& c, std::uint64_t k,
                            std::uint64_t n_cap = 4096, std::uint64_t mono_check_cap = 128);

}  // namespace nsa::mct
