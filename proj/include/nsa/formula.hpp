// formula.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The external formula language: internal first-order formulas over
// applicative terms, the standardness predicate st, and st-relativized
// quantifiers.  Formulas are immutable; every operation is pure.
#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nsa/term.hpp"  // FinType is shared with the term language

namespace nsa::formulas {

using terms::TypePtr;

// --------------------------------------------------------- formula terms ----
struct FTerm;
using FTermPtr = std::shared_ptr<const FTerm>;

struct FTerm {
  enum class Kind { Var, Lit, App, Succ };
  Kind kind;
  std::string name;       // Var
  std::uint64_t lit = 0;  // Lit
  FTermPtr fn, arg;       // App (curried)
  FTermPtr sub;           // Succ
};

FTermPtr fvar(const std::string& name);
FTermPtr flit(std::uint64_t n);
FTermPtr fapp(FTermPtr fn, FTermPtr arg);
FTermPtr fapp(FTermPtr fn, std::initializer_list<FTermPtr> args);
FTermPtr fsucc(FTermPtr t);
bool fterm_equal(const FTermPtr& a, const FTermPtr& b);
void fterm_vars(const FTermPtr& t, std::set<std::string>& out);

// --------------------------------------------------------------- formulas ----
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind { Atom, Not, And, Or, Implies, Forall, Exists, ForallSt, ExistsSt, St };

// Atom relations with fixed meaning: "=", "<=", "in" (sequence membership),
// "dist-lt" (|x-y| < 1/k), "dist-le" (|x-y| <= 1/k), "dist-le-pow2"
// (|x-y| <= 2^-n), plus the macro atoms "approx", "req", "in-omega" which
// expand before any rewriting.  Any other relation symbol is an
// uninterpreted schema slot.
struct Formula {
  FKind kind;
  std::string rel;             // Atom
  std::vector<FTermPtr> args;  // Atom
  std::string var;             // quantifiers
  TypePtr var_type;            // quantifiers
  FTermPtr st_term;            // St
  std::vector<FormulaPtr> kids;
};

FormulaPtr atom(const std::string& rel, std::vector<FTermPtr> args);
FormulaPtr fnot(FormulaPtr a);
FormulaPtr fand(std::vector<FormulaPtr> kids);
FormulaPtr forr(std::vector<FormulaPtr> kids);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(const std::string& v, TypePtr ty, FormulaPtr body);
FormulaPtr exists(const std::string& v, TypePtr ty, FormulaPtr body);
FormulaPtr forall_st(const std::string& v, TypePtr ty, FormulaPtr body);
FormulaPtr exists_st(const std::string& v, TypePtr ty, FormulaPtr body);
FormulaPtr st(FTermPtr t);

bool is_quantifier(FKind k);
bool is_st_quantifier(FKind k);

// ---------------------------------------------------------------- errors ----
class FormulaError : public std::runtime_error {
 public:
  enum class Code { NotInternal, Arity };
  FormulaError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

// ------------------------------------------------------------- operations ----

// True iff no st node, no st-relativized quantifier, and no macro atom that
// expands to an external formula occurs in F.
bool is_internal(const FormulaPtr& f);

// F^st: append st to every quantifier of an internal formula, except
// quantifiers syntactically bounded by a Nat term or a sequence
// (the patterns  Q n (n <= t -> ...), Q n (n <= t /\ ...) and the
// membership forms with (in n s)).
FormulaPtr relativize_st(const FormulaPtr& f);

// True iff F is a block of forall-st, then a block of exists-st, then an
// internal matrix (either block may be empty).
bool is_normal_form(const FormulaPtr& f);

// Erase st annotations: forall-st/exists-st become forall/exists and st
// atoms become trivially true (0 = 0).
FormulaPtr erase_st(const FormulaPtr& f);

// Expand approx / req / in-omega macro atoms.  in-omega guards of the shape
//   (forall N ...) [... (in-omega N) /\ ... -> body]
// become "N is at least every standard number" guards; this expansion is
// part of reading the notation, not a rewrite step.  The overload threads a
// used-name set so fresh binders stay unique across an enclosing formula.
FormulaPtr expand_macros(const FormulaPtr& f);
FormulaPtr expand_macros(const FormulaPtr& f, std::set<std::string>& used);

// Free variables (of formula terms, minus bound quantifier variables).
std::set<std::string> free_vars(const FormulaPtr& f);

// Every name occurring in F, free or bound; the fresh-name pool.
std::set<std::string> all_names(const FormulaPtr& f);

// Renames bound variables so that all binders are distinct from each other
// and from every free variable.  Preserves names where possible.
FormulaPtr ensure_unique_binders(const FormulaPtr& f);

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);  // syntactic

// ------------------------------------------------------- parse / print ----
FormulaPtr parse_formula(const std::string& text);
std::string formula_to_string(const FormulaPtr& f);

// --------------------------------------------------------------- positions ----
// A position is a path of child indices from the root (quantifiers and not
// have one child, implies has two, and/or have N).
using Position = std::vector<int>;
FormulaPtr subformula_at(const FormulaPtr& f, const Position& pos);
FormulaPtr replace_at(const FormulaPtr& f, const Position& pos, const FormulaPtr& repl);

// Substitute a term for a free variable.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FTermPtr& t);
FTermPtr fterm_substitute(const FTermPtr& t, const std::string& var, const FTermPtr& repl);

std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace nsa::formulas
