// term.hpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
//
// The term language: lambda terms over the finite types with a dedicated
// sequence type former, natural-number literals, the type-0-indexed
// primitive recursor, and the sequence builtins (len, concat, restrict,
// index, max).  Closed well-typed terms of base type evaluate to a unique
// normal value; evaluation is pure and total (primitive recursion only).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsa::terms {

// ---------------------------------------------------------------- types ----
struct FinType;
using TypePtr = std::shared_ptr<const FinType>;

struct FinType {
  enum class Kind { Nat, Arrow, Seq };
  Kind kind;
  TypePtr dom, cod;  // Arrow
  TypePtr elem;      // Seq
};

TypePtr nat_type();
TypePtr arrow(TypePtr dom, TypePtr cod);
TypePtr seq_of(TypePtr elem);
bool type_equal(const TypePtr& a, const TypePtr& b);
std::string type_to_string(const TypePtr& t);
TypePtr parse_type(const std::string& text);

// ---------------------------------------------------------------- terms ----
struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind {
  Var,
  Lam,
  App,
  Lit,
  Succ,      // kids: (t)
  Rec,       // kids: (base, step, n); step : Nat -> rho -> rho
  SeqLit,    // kids: elements
  Len,       // kids: (s)
  Concat,    // kids: (s, t)
  Restrict,  // kids: (s, n)   inclusive: result has length n+1, needs n < |s|
  Index,     // kids: (s, i)
  MaxSeq,    // kids: (s)      max of a Nat sequence, 0 when empty
};

struct Term {
  TermKind kind;
  std::string name;     // Var / Lam binder
  TypePtr binder_type;  // Lam
  std::uint64_t lit = 0;
  std::vector<TermPtr> kids;
};

TermPtr var(const std::string& name);
TermPtr lam(const std::string& binder, TypePtr ty, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr lit(std::uint64_t n);
TermPtr succ(TermPtr t);
TermPtr rec(TermPtr base, TermPtr step, TermPtr n);
TermPtr seq_lit(std::vector<TermPtr> elems);
TermPtr len(TermPtr s);
TermPtr concat(TermPtr s, TermPtr t);
TermPtr restrict_seq(TermPtr s, TermPtr n);
TermPtr index_seq(TermPtr s, TermPtr i);
TermPtr max_seq(TermPtr s);

bool is_closed(const TermPtr& t);
bool term_equal(const TermPtr& a, const TermPtr& b);

std::string term_to_string(const TermPtr& t);
TermPtr parse_term(const std::string& text);

// --------------------------------------------------------------- errors ----
class TypeError : public std::runtime_error {
 public:
  enum class Code { TypeMismatch, UnboundVariable };
  TypeError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

class EvalError : public std::runtime_error {
 public:
  enum class Code { OutOfDomain, NotClosed, BadApplication };
  EvalError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

// ------------------------------------------------------------- checking ----
using TypeContext = std::map<std::string, TypePtr>;
TypePtr type_check(const TermPtr& t, const TypeContext& ctx = {});

// --------------------------------------------------------------- values ----
struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  enum class Kind { Nat, Seq, Closure, HostFn };
  Kind kind;
  std::uint64_t nat = 0;
  std::vector<ValuePtr> seq;
  // Closure
  TermPtr lam_term;
  std::shared_ptr<const struct EnvNode> env;
  // HostFn: an externally supplied function value, queried at finitely
  // many points during evaluation.
  std::function<ValuePtr(const ValuePtr&)> host;
};

struct EnvNode {
  std::string name;
  ValuePtr value;
  std::shared_ptr<const EnvNode> next;
};

ValuePtr nat_value(std::uint64_t n);
ValuePtr seq_value(std::vector<ValuePtr> elems);
ValuePtr host_fn(std::function<ValuePtr(const ValuePtr&)> f);
ValuePtr host_nat_fn(std::function<std::uint64_t(std::uint64_t)> f);
bool value_equal(const ValuePtr& a, const ValuePtr& b);
std::string value_to_string(const ValuePtr& v);

// Evaluates a closed term applied to the given arguments.
ValuePtr evaluate(const TermPtr& t, const std::vector<ValuePtr>& args = {});

// max of a finite Nat sequence; 0 on the empty sequence.
std::uint64_t seq_max(const std::vector<std::uint64_t>& s);

}  // namespace nsa::terms
