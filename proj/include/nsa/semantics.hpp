// semantics.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// Finite full-standard semantics: numbers range over {0..max_elem}, st holds
// of every element, sequence variables range over short sequences, unary
// number functions are enumerated exhaustively, and higher-type function
// variables range over a seeded deterministic family.  Distance atoms get
// their integer reading; unknown relation symbols get a seeded boolean
// table.  Under this semantics idealisation and the finite-choice schema
// are valid, which is what makes the evaluator usable as a rewrite oracle.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsa/formula.hpp"

namespace nsa::semantics {

using formulas::FormulaPtr;
using formulas::FTermPtr;
using terms::TypePtr;

struct Interpretation {
  int max_elem = 2;       // domain {0..max_elem}
  std::uint64_t seed = 1;
  int opaque_family = 6;  // size of the sampled family at higher types
  int domain_size() const { return max_elem + 1; }
  int seq_len_cap() const { return max_elem + 1; }
};

struct SemValue {
  enum class Kind { Nat, Seq, Table, Opaque };
  Kind kind = Kind::Nat;
  int nat = 0;
  std::vector<int> seq;
  std::vector<int> table;
  std::uint64_t opaque_id = 0;
  TypePtr type;  // Opaque: needed to derive application results

  std::string key() const;
};

using Env = std::map<std::string, SemValue>;

SemValue apply_value(const SemValue& f, const SemValue& x, const Interpretation& in);
std::vector<SemValue> enumerate_values(const TypePtr& ty, const Interpretation& in);
SemValue eval_term(const FTermPtr& t, const Env& env, const Interpretation& in);
bool eval_formula(const FormulaPtr& f, const Env& env, const Interpretation& in);

// All assignments of the given free variables; used to close open formulas.
using VarTypes = std::vector<std::pair<std::string, TypePtr>>;

struct Counterexample {
  Interpretation interp;
  std::string assignment;
};

// Checks "before true implies after true" on every interpretation in the
// sweep and every assignment of the free variables.
std::optional<Counterexample> check_consequence(const FormulaPtr& before,
                                                const FormulaPtr& after,
                                                const VarTypes& free,
                                                const std::vector<Interpretation>& sweep);

// Checks equal truth values (used for the rules that are equivalences).
std::optional<Counterexample> check_equivalence(const FormulaPtr& before,
                                                const FormulaPtr& after,
                                                const VarTypes& free,
                                                const std::vector<Interpretation>& sweep);

std::vector<Interpretation> default_sweep(std::uint64_t seed);

// Guesses Nat / Nat->Nat / seq types for the free variables of a formula
// from how they are used; anything unconstrained defaults to Nat.
VarTypes infer_free_var_types(const FormulaPtr& f);

}  // namespace nsa::semantics
