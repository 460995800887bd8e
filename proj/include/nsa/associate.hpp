// associate.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// Associates (neighborhood functions on finite sequences): a type-one code
// alpha for a continuous functional, returning value+1 once it has seen a
// long enough initial segment and 0 before that.  Initial segments follow
// the repo-wide inclusive convention: the probe at k inspects beta(0..k),
// a sequence of length k+1.  Undefined application is a value, never an
// exception.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nsa::ecf {

using Seq = std::vector<std::uint64_t>;
using Fn = std::function<std::uint64_t(std::uint64_t)>;

struct Associate {
  std::function<std::uint64_t(const Seq&)> alpha;
  std::uint64_t operator()(const Seq& s) const { return alpha(s); }
};

// Neighborhood consistency on all sigma <= tau with |tau| <= sample_depth
// over the alphabet {0..sample_depth}: a positive value never changes on
// extensions.
bool is_neighborhood(const Associate& a, std::uint64_t sample_depth);

// alpha(beta): probe initial segments beta(0..k) for k = 0..probe_cap and
// return alpha's value minus one at the least defined k; nullopt when no
// probe succeeds.
std::optional<std::uint64_t> apply_associate(const Associate& a, const Fn& beta,
                                             std::uint64_t probe_cap);

// Interleaving: (beta (+) gamma)(2k) = beta(k), (beta (+) gamma)(2k+1) = gamma(k).
Fn oplus(Fn beta, Fn gamma);

// alpha|beta := n -> alpha applied to <n>*beta; reports per-point
// definedness up to n_max.
struct PartialApplication {
  std::vector<std::optional<std::uint64_t>> values;  // index n
  bool defined_up_to(std::uint64_t n_max) const;
};
PartialApplication restrict_apply(const Associate& a, const Fn& beta, std::uint64_t probe_cap,
                                  std::uint64_t n_max);

// Builds an associate for a functional F with a pointwise continuity
// modulus: modulus(beta) = how many positions of beta determine F(beta).
// Each finite sequence is read as its zero-extension.
using Functional = std::function<std::uint64_t(const Fn&)>;
using Modulus = std::function<std::uint64_t(const Fn&)>;
Associate associate_of(const Functional& F, const Modulus& modulus,
                       std::uint64_t probe_alphabet = 0);

// Serializes alpha as a finite table over the alphabet up to the given
// depth; everything outside the table defaults to 0.
std::map<Seq, std::uint64_t> associate_table(const Associate& a, std::uint64_t depth,
                                             std::uint64_t alphabet);

}  // namespace nsa::ecf
