// rewrite.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The rewrite engine: the normal-form pipeline for st-annotated formulas.
// Every rule is a deterministic transformation applied at a recorded
// position, so traces replay exactly.  The pipeline brings an implication
// between external formulas into the shape
//     (forall-st x)(exists-st y) [internal matrix]
// by pulling standard quantifiers, contraposing idealisation to turn a
// stuck standard existential into a finite witness sequence, collapsing
// that sequence to its maximum, and introducing a witness functional for
// a normal-form antecedent.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsa/formula.hpp"

namespace nsa::rewrite {

using formulas::FormulaPtr;
using formulas::Position;

class RewriteError : public std::runtime_error {
 public:
  enum class Code { ShapeMismatch, NotMonotone, NotInternal, PipelineStuck, BlockedByBinding };
  RewriteError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

// ----------------------------------------------------------------- rules ----
// Each rule takes the full formula and a position and returns the full
// rewritten formula; fresh names are chosen against the whole formula, so
// replaying a rule at its recorded position is deterministic.

FormulaPtr rule_expand_macros(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_contrapose(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_pull_st_quantifiers(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_contrapose_idealisation(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_collapse_witness_by_max(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_push_bounded_exists(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_weaken_strict_bound(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_introduce_witness_functional(const FormulaPtr& full, const Position& pos);
FormulaPtr rule_drop_antecedent_st(const FormulaPtr& full, const Position& pos);

// Applies a rule by its trace name; throws on unknown names.
FormulaPtr apply_rule(const std::string& rule, const FormulaPtr& full, const Position& pos);
const std::vector<std::string>& rule_names();
// Rules that are truth-value-preserving equivalences under the finite
// full-standard semantics; the others are consequences only.
bool rule_is_equivalence(const std::string& rule);

// ----------------------------------------------------------------- trace ----
struct Step {
  std::string rule;
  Position pos;
  FormulaPtr before;  // full formula before the step
  FormulaPtr after;   // full formula after the step
};

struct Milestone {
  std::string name;
  FormulaPtr formula;  // subformula snapshot
};

struct RewriteTrace {
  FormulaPtr input;
  std::vector<Step> steps;
  std::vector<Milestone> milestones;
  FormulaPtr final;

  FormulaPtr milestone(const std::string& name) const;
  // Re-applies every recorded rule; true when each step reproduces.
  bool replays() const;
};

// -------------------------------------------------------------- pipeline ----
struct PipelineOptions {
  // Rewrites a consequent-side standard witness (exists-st n) phi(n) into
  // the monotone bounded shape (exists-st n)[... -> (exists i <= n) ...],
  // which single-witness extraction needs.
  bool monotonize_witness = false;
};

RewriteTrace normalize_formula(const FormulaPtr& f, const PipelineOptions& opts = {});
RewriteTrace normalize_implication(const FormulaPtr& ante, const FormulaPtr& cons,
                                   const PipelineOptions& opts = {});

// Milestone names produced by the pipeline, in order of appearance:
//   "macro-expanded", "consequent-nf", "convergence-nf", "antecedent-nf",
//   "implication-nf", "witness-functional", "internal-antecedent",
//   "normal-form"

// -------------------------------------------------- single-witness bound ----
// Composes a sequence-valued witness term with the sequence maximum,
// yielding the single numeric bound; the matrix must be monotone in the
// witness variable (occurrences only as lower bounds or under a bounded
// existential).
terms::TermPtr herbrand_to_bound(const terms::TermPtr& seq_term, const FormulaPtr& matrix,
                                 const std::string& witness_var);

}  // namespace nsa::rewrite
