// principles.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/principles.hpp"

#include <map>
#include <stdexcept>

namespace nsa::principles {

using namespace formulas;
using terms::nat_type;

namespace {

const std::map<std::string, std::string>& schema_texts() {
  static const std::map<std::string, std::string> texts = {
      {"PI01-TRANS",
       "(forall-st (f (-> Nat Nat))"
       " (=> (forall-st (n Nat) (not (= (app f n) 0)))"
       "     (forall (m Nat) (not (= (app f m) 0)))))"},
      {"MU",
       "(forall (f (-> Nat Nat))"
       " (=> (exists (n Nat) (= (app f n) 0))"
       "     (= (app f (app mu f)) 0)))"},
      {"MCT-NS",
       "(forall-st (c (-> Nat Nat))"
       " (=> (forall (n Nat) (and (<= (app c n) (app c (succ n)))"
       "                          (<= (app c (succ n)) 1)))"
       "     (forall (N Nat) (forall (M Nat)"
       "       (=> (and (in-omega N) (in-omega M))"
       "           (approx (app c M) (app c N)))))))"},
      {"MCT-EF",
       "(forall (c (-> Nat Nat)) (forall (k Nat)"
       " (=> (forall (n Nat) (and (<= (app c n) (app c (succ n)))"
       "                          (<= (app c (succ n)) 1)))"
       "     (forall (N Nat) (forall (M Nat)"
       "       (=> (and (<= (app t c k) N) (<= (app t c k) M))"
       "           (dist-le (app c M) (app c N) k)))))))"},
      {"I",
       "(=> (forall-st (x (seq Nat)) (exists (y Nat)"
       "      (forall (z Nat) (=> (in z x) (phi z y)))))"
       "    (exists (y Nat) (forall-st (x Nat) (phi x y))))"},
      {"HAC-INT",
       "(=> (forall-st (x Nat) (exists-st (y Nat) (phi x y)))"
       "    (exists-st (F (-> Nat (seq Nat))) (forall-st (x Nat)"
       "      (exists (y Nat) (and (in y (app F x)) (phi x y))))))"},
  };
  return texts;
}

}  // namespace

const std::vector<std::string>& principle_names() {
  static const std::vector<std::string> names = {"PI01-TRANS", "MU",      "MCT-NS",
                                                 "MCT-EF",     "I", "HAC-INT"};
  return names;
}

std::string canonical_sexp(const std::string& name) {
  auto it = schema_texts().find(name);
  if (it == schema_texts().end()) throw std::invalid_argument("unknown principle: " + name);
  return it->second;
}

FormulaPtr principle(const std::string& name) { return parse_formula(canonical_sexp(name)); }

FormulaPtr mct_to_trans_input() {
  return implies(principle("MCT-NS"), principle("PI01-TRANS"));
}

FormulaPtr mct_to_trans_restricted_input() {
  // (forall-st f)[ the convergence principle at the sequence tseq f
  //                -> pointwise transfer for f ]
  // with the value range conjunct 0 <= tseq f j made explicit.
  static const std::string text =
      "(forall-st (f (-> Nat Nat))"
      " (=> (=> (forall (j Nat) (and (<= 0 (app tseq f j))"
      "                              (<= (app tseq f j) (app tseq f (succ j)))"
      "                              (<= (app tseq f (succ j)) 1)))"
      "         (forall (N Nat) (forall (M Nat)"
      "           (=> (and (in-omega N) (in-omega M))"
      "               (approx (app tseq f M) (app tseq f N))))))"
      "     (=> (forall-st (n Nat) (not (= (app f n) 0)))"
      "         (forall (m Nat) (not (= (app f m) 0))))))";
  return parse_formula(text);
}

FormulaPtr pointwise_matrix() {
  // C(n, f): a zero anywhere yields a zero at or below n
  return parse_formula(
      "(=> (exists (m Nat) (= (app f m) 0))"
      "    (exists (i Nat) (and (<= i n) (= (app f i) 0))))");
}

// --------------------------------------------------------------- witnesses ----

namespace {

using namespace terms;

// if c = 0 then a else b   (c, a, b : Nat-typed terms; b evaluated lazily is
// not needed at desk scale)
TermPtr ifz(TermPtr c, TermPtr a, TermPtr b, const std::string& tag) {
  return rec(std::move(a),
             lam("i" + tag, nat_type(), lam("v" + tag, nat_type(), std::move(b))),
             std::move(c));
}

// 1 if n = 0 else 0
TermPtr is_zero(TermPtr n, const std::string& tag) {
  return ifz(std::move(n), lit(1), lit(0), tag);
}

}  // namespace

terms::TermPtr tseq_term() {
  using namespace terms;
  // found(f, k) = 1 iff f has a zero at or below k:
  //   rec with base iszero(f 0), step (i, acc) -> max-like or of acc and
  //   iszero(f (succ i))
  TermPtr f = terms::var("f");
  TermPtr k = terms::var("k");
  TermPtr found = rec(
      is_zero(app(f, lit(0)), "b"),
      lam("i", nat_type(),
          lam("acc", nat_type(),
              // acc = 1 stays 1; otherwise look at f(i+1)
              ifz(terms::var("acc"), is_zero(app(f, succ(terms::var("i"))), "s"), lit(1), "o"))),
      k);
  // pow(k) = 2 * 4^k = the coded rational 1 - 2^-k
  TermPtr pow = rec(
      lit(2),
      lam("i2", nat_type(),
          lam("v", nat_type(),
              // v * 4 by iterated doubling: rec over v adding 4 each time
              rec(lit(0),
                  lam("i3", nat_type(),
                      lam("w", nat_type(), succ(succ(succ(succ(terms::var("w"))))))),
                  terms::var("v")))),
      k);
  // tseq f k = if found then pow else 2
  TermPtr body = ifz(found, lit(2), pow, "t");
  return lam("f", arrow(nat_type(), nat_type()), lam("k", nat_type(), body));
}

namespace {

// upto(n) = <0, 1, ..., n>
terms::TermPtr upto(terms::TermPtr n) {
  using namespace terms;
  return rec(seq_lit({lit(0)}),
             lam("i4", nat_type(),
                 lam("s", seq_of(nat_type()),
                     concat(terms::var("s"), seq_lit({succ(terms::var("i4"))})))),
             std::move(n));
}

}  // namespace

terms::TermPtr witness_enum_term() {
  using namespace terms;
  TypePtr seq_ty = arrow(nat_type(), nat_type());
  TypePtr psi_ty = arrow(nat_type(), arrow(seq_ty, nat_type()));
  // Psi applied at precision 3 to the attached sequence bounds the zeros
  TermPtr bound = app(app(terms::var("Psi"), lit(3)), app(tseq_term(), terms::var("f")));
  return lam("Psi", psi_ty, lam("f", seq_ty, upto(bound)));
}

terms::TermPtr witness_single_term() {
  using namespace terms;
  TypePtr fn_ty = arrow(nat_type(), nat_type());
  return lam("f", fn_ty,
             lam("psi", fn_ty, seq_lit({app(terms::var("psi"), lit(3))})));
}

}  // namespace nsa::principles
