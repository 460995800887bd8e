// principles.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The named principles of the workbench (schemas over the formula
// language), the canonical normalizer inputs, and the extracted witness
// terms of the monotone-convergence case study.
#pragma once

#include <string>
#include <vector>

#include "nsa/formula.hpp"
#include "nsa/term.hpp"

namespace nsa::principles {

// PI01-TRANS, MU, MCT-NS, MCT-EF, I, HAC-INT
const std::vector<std::string>& principle_names();
formulas::FormulaPtr principle(const std::string& name);
std::string canonical_sexp(const std::string& name);

// The two normalizer inputs of the case study: the full implication
// between the convergence principle and transfer, and the pointwise
// variant specialized to the extracted sequence (constant symbol tseq).
formulas::FormulaPtr mct_to_trans_input();
formulas::FormulaPtr mct_to_trans_restricted_input();

// ------------------------------------------------------------- witnesses ----
// tseq : (Nat -> Nat) -> Nat -> Nat
// the coded monotone sequence attached to f: code 2 while f is nonzero,
// code 2^(2k+1) (the coded rational 1 - 2^-k) from the first zero on.
terms::TermPtr tseq_term();

// witness_enum : (Nat -> (Nat -> Nat) -> Nat) -> (Nat -> Nat) -> (seq Nat)
// the finite candidate list <0, ..., Psi(3, tseq f)> for the full run.
terms::TermPtr witness_enum_term();

// witness_single : (Nat -> Nat) -> (Nat -> Nat) -> (seq Nat)
// the singleton <psi(3)> for the pointwise run.
terms::TermPtr witness_single_term();

// The monotone matrix of the pointwise normal form (free: f, n), used when
// collapsing witness sequences to a single bound.
formulas::FormulaPtr pointwise_matrix();

}  // namespace nsa::principles
