// semantics.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/semantics.hpp"

#include <algorithm>
#include <functional>

namespace nsa::semantics {

using formulas::FKind;
using formulas::Formula;
using formulas::FTerm;
using terms::FinType;

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_str(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = mix(h ^ c);
  return h;
}

}  // namespace

std::string SemValue::key() const {
  switch (kind) {
    case Kind::Nat: return "n" + std::to_string(nat);
    case Kind::Seq: {
      std::string k = "s";
      for (int x : seq) k += std::to_string(x) + ",";
      return k;
    }
    case Kind::Table: {
      std::string k = "t";
      for (int x : table) k += std::to_string(x) + ",";
      return k;
    }
    case Kind::Opaque: return "o" + std::to_string(opaque_id);
  }
  return "?";
}

namespace {

SemValue nat_val(int n) {
  SemValue v;
  v.kind = SemValue::Kind::Nat;
  v.nat = n;
  return v;
}

// Derives a value of the given type from a hash; used for the codomain of
// sampled higher-type functionals.
SemValue value_from_hash(const TypePtr& ty, std::uint64_t h, const Interpretation& in) {
  int d = in.domain_size();
  SemValue v;
  if (!ty || ty->kind == FinType::Kind::Nat) {
    v.kind = SemValue::Kind::Nat;
    v.nat = static_cast<int>(mix(h) % d);
    return v;
  }
  if (ty->kind == FinType::Kind::Seq) {
    v.kind = SemValue::Kind::Seq;
    int len = static_cast<int>(mix(h ^ 1) % (in.seq_len_cap() + 1));
    for (int i = 0; i < len; ++i) v.seq.push_back(static_cast<int>(mix(h + 2 + i) % d));
    return v;
  }
  // Arrow
  if (ty->dom->kind == FinType::Kind::Nat && ty->cod->kind == FinType::Kind::Nat) {
    v.kind = SemValue::Kind::Table;
    for (int i = 0; i < d; ++i) v.table.push_back(static_cast<int>(mix(h + 17 * i) % d));
    return v;
  }
  v.kind = SemValue::Kind::Opaque;
  v.opaque_id = mix(h);
  v.type = ty;
  return v;
}

}  // namespace

SemValue apply_value(const SemValue& f, const SemValue& x, const Interpretation& in) {
  if (f.kind == SemValue::Kind::Table) {
    int i = x.kind == SemValue::Kind::Nat ? x.nat : 0;
    if (i < 0 || i >= static_cast<int>(f.table.size())) i = 0;
    return nat_val(f.table[i]);
  }
  if (f.kind == SemValue::Kind::Opaque) {
    std::uint64_t h = mix(f.opaque_id ^ hash_str(x.key(), in.seed));
    TypePtr cod = f.type && f.type->kind == FinType::Kind::Arrow ? f.type->cod : nullptr;
    return value_from_hash(cod, h, in);
  }
  // applying a non-function: deterministic fallback
  return nat_val(static_cast<int>(mix(hash_str(f.key() + "@" + x.key(), in.seed)) % in.domain_size()));
}

std::vector<SemValue> enumerate_values(const TypePtr& ty, const Interpretation& in) {
  int d = in.domain_size();
  std::vector<SemValue> out;
  if (ty->kind == FinType::Kind::Nat) {
    for (int i = 0; i < d; ++i) out.push_back(nat_val(i));
    return out;
  }
  if (ty->kind == FinType::Kind::Seq && ty->elem->kind == FinType::Kind::Nat) {
    // all sequences over the domain of length <= cap; enough for the
    // finite-choice argument behind idealisation (<= domain-size many
    // distinct witnesses)
    std::vector<std::vector<int>> cur = {{}};
    for (int len = 0; len <= in.seq_len_cap(); ++len) {
      std::vector<std::vector<int>> next;
      for (auto& s : cur) {
        SemValue v;
        v.kind = SemValue::Kind::Seq;
        v.seq = s;
        out.push_back(v);
        if (len < in.seq_len_cap())
          for (int e = 0; e < d; ++e) {
            auto t = s;
            t.push_back(e);
            next.push_back(std::move(t));
          }
      }
      cur = std::move(next);
    }
    return out;
  }
  if (ty->kind == FinType::Kind::Arrow && ty->dom->kind == FinType::Kind::Nat &&
      ty->cod->kind == FinType::Kind::Nat) {
    // all unary functions on the domain
    int count = 1;
    for (int i = 0; i < d; ++i) count *= d;
    for (int id = 0; id < count; ++id) {
      SemValue v;
      v.kind = SemValue::Kind::Table;
      int x = id;
      for (int i = 0; i < d; ++i) {
        v.table.push_back(x % d);
        x /= d;
      }
      out.push_back(v);
    }
    return out;
  }
  // higher types: the seeded family
  for (int i = 0; i < in.opaque_family; ++i) {
    SemValue v;
    v.kind = SemValue::Kind::Opaque;
    v.opaque_id = mix(in.seed ^ hash_str(terms::type_to_string(ty), 7) ^ (std::uint64_t)i);
    v.type = ty;
    out.push_back(v);
  }
  return out;
}

SemValue eval_term(const FTermPtr& t, const Env& env, const Interpretation& in) {
  switch (t->kind) {
    case FTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end()) return it->second;
      // unassigned free symbol: a fixed seeded constant of unknown type
      SemValue v;
      v.kind = SemValue::Kind::Opaque;
      v.opaque_id = hash_str(t->name, in.seed ^ 0x51);
      v.type = nullptr;
      return v;
    }
    case FTerm::Kind::Lit: return nat_val(static_cast<int>(std::min<std::uint64_t>(t->lit, in.max_elem)));
    case FTerm::Kind::Succ: {
      SemValue x = eval_term(t->sub, env, in);
      int n = x.kind == SemValue::Kind::Nat ? x.nat : 0;
      return nat_val(std::min(n + 1, in.max_elem));
    }
    case FTerm::Kind::App:
      return apply_value(eval_term(t->fn, env, in), eval_term(t->arg, env, in), in);
  }
  return nat_val(0);
}

namespace {

int nat_of(const SemValue& v) { return v.kind == SemValue::Kind::Nat ? v.nat : 0; }

bool eval_atom(const Formula& f, const Env& env, const Interpretation& in) {
  std::vector<SemValue> args;
  args.reserve(f.args.size());
  for (auto& a : f.args) args.push_back(eval_term(a, env, in));
  if (f.rel == "=") return args[0].key() == args[1].key();
  if (f.rel == "<=") {
    if (args[0].kind == SemValue::Kind::Nat && args[1].kind == SemValue::Kind::Nat)
      return args[0].nat <= args[1].nat;
    return args[0].key() <= args[1].key();
  }
  if (f.rel == "in") {
    if (args[1].kind != SemValue::Kind::Seq || args[0].kind != SemValue::Kind::Nat) return false;
    return std::find(args[1].seq.begin(), args[1].seq.end(), args[0].nat) != args[1].seq.end();
  }
  // |x - y| < 1/k and |x - y| <= 1/k with the integer reading: for k = 0 the
  // bound is infinite, for k = 1 the nonstrict bound allows distance 1, and
  // beyond that only equality passes.
  if (f.rel == "dist-lt") {
    int k = nat_of(args[2]);
    return k == 0 || args[0].key() == args[1].key();
  }
  if (f.rel == "dist-le") {
    int k = nat_of(args[2]);
    if (k == 0) return true;
    if (k == 1 && args[0].kind == SemValue::Kind::Nat && args[1].kind == SemValue::Kind::Nat)
      return std::abs(args[0].nat - args[1].nat) <= 1;
    return args[0].key() == args[1].key();
  }
  if (f.rel == "dist-le-pow2") {
    int n = nat_of(args[2]);
    if (n == 0 && args[0].kind == SemValue::Kind::Nat && args[1].kind == SemValue::Kind::Nat)
      return std::abs(args[0].nat - args[1].nat) <= 1;
    return args[0].key() == args[1].key();
  }
  // uninterpreted relation: seeded boolean table over the argument tuple
  std::uint64_t h = hash_str(f.rel, in.seed ^ 0xa5a5);
  for (auto& a : args) h = mix(h ^ hash_str(a.key(), in.seed));
  return (h & 1) != 0;
}

}  // namespace

bool eval_formula(const FormulaPtr& f, const Env& env, const Interpretation& in) {
  switch (f->kind) {
    case FKind::Atom: return eval_atom(*f, env, in);
    case FKind::St: return true;  // full-standard semantics
    case FKind::Not: return !eval_formula(f->kids[0], env, in);
    case FKind::And:
      for (auto& k : f->kids)
        if (!eval_formula(k, env, in)) return false;
      return true;
    case FKind::Or:
      for (auto& k : f->kids)
        if (eval_formula(k, env, in)) return true;
      return false;
    case FKind::Implies:
      return !eval_formula(f->kids[0], env, in) || eval_formula(f->kids[1], env, in);
    case FKind::Forall:
    case FKind::ForallSt: {
      for (auto& v : enumerate_values(f->var_type, in)) {
        Env e = env;
        e[f->var] = v;
        if (!eval_formula(f->kids[0], e, in)) return false;
      }
      return true;
    }
    case FKind::Exists:
    case FKind::ExistsSt: {
      for (auto& v : enumerate_values(f->var_type, in)) {
        Env e = env;
        e[f->var] = v;
        if (eval_formula(f->kids[0], e, in)) return true;
      }
      return false;
    }
  }
  return false;
}

namespace {

// enumerates assignments of the free variables, invoking fn on each; stops
// early when fn returns false
bool for_each_assignment(const VarTypes& free, std::size_t i, Env& env, const Interpretation& in,
                         const std::function<bool(const Env&)>& fn) {
  if (i == free.size()) return fn(env);
  for (auto& v : enumerate_values(free[i].second, in)) {
    env[free[i].first] = v;
    if (!for_each_assignment(free, i + 1, env, in, fn)) return false;
  }
  env.erase(free[i].first);
  return true;
}

std::string describe(const Env& env) {
  std::string s;
  for (auto& [k, v] : env) s += k + "=" + v.key() + " ";
  return s;
}

std::optional<Counterexample> check_impl(const FormulaPtr& before, const FormulaPtr& after,
                                         const VarTypes& free,
                                         const std::vector<Interpretation>& sweep,
                                         bool equivalence) {
  for (const auto& in : sweep) {
    Env env;
    std::optional<Counterexample> found;
    for_each_assignment(free, 0, env, in, [&](const Env& e) {
      bool b = eval_formula(before, e, in);
      bool a = eval_formula(after, e, in);
      bool ok = equivalence ? (a == b) : (!b || a);
      if (!ok) {
        found = Counterexample{in, describe(e)};
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Counterexample> check_consequence(const FormulaPtr& before, const FormulaPtr& after,
                                                const VarTypes& free,
                                                const std::vector<Interpretation>& sweep) {
  return check_impl(before, after, free, sweep, false);
}

std::optional<Counterexample> check_equivalence(const FormulaPtr& before, const FormulaPtr& after,
                                                const VarTypes& free,
                                                const std::vector<Interpretation>& sweep) {
  return check_impl(before, after, free, sweep, true);
}

std::vector<Interpretation> default_sweep(std::uint64_t seed) {
  std::vector<Interpretation> sweep;
  for (int m = 0; m <= 2; ++m) {
    Interpretation in;
    in.max_elem = m;
    in.seed = seed + m;
    sweep.push_back(in);
  }
  Interpretation extra;
  extra.max_elem = 2;
  extra.seed = mix(seed) | 1;
  sweep.push_back(extra);
  return sweep;
}

VarTypes infer_free_var_types(const FormulaPtr& f) {
  using formulas::FKind;
  std::map<std::string, int> arity;       // max application spine length
  std::map<std::string, bool> is_seq;     // used as the sequence of (in x s)
  std::set<std::string> bound;

  std::function<void(const FTermPtr&)> scan_term = [&](const FTermPtr& t) {
    if (t->kind == FTerm::Kind::Var) {
      if (!bound.count(t->name)) arity.emplace(t->name, 0);
      return;
    }
    if (t->kind == FTerm::Kind::Succ) return scan_term(t->sub);
    if (t->kind == FTerm::Kind::App) {
      int n = 0;
      FTermPtr head = t;
      while (head->kind == FTerm::Kind::App) {
        scan_term(head->arg);
        head = head->fn;
        ++n;
      }
      if (head->kind == FTerm::Kind::Var && !bound.count(head->name)) {
        auto [it, _] = arity.emplace(head->name, 0);
        it->second = std::max(it->second, n);
      }
    }
  };

  std::function<void(const FormulaPtr&)> scan = [&](const FormulaPtr& g) {
    switch (g->kind) {
      case FKind::Atom:
        for (auto& a : g->args) scan_term(a);
        if (g->rel == "in" && g->args.size() == 2 && g->args[1]->kind == FTerm::Kind::Var &&
            !bound.count(g->args[1]->name))
          is_seq[g->args[1]->name] = true;
        return;
      case FKind::St: scan_term(g->st_term); return;
      default:
        if (formulas::is_quantifier(g->kind)) {
          bool fresh = bound.insert(g->var).second;
          scan(g->kids[0]);
          if (fresh) bound.erase(g->var);
          return;
        }
        for (auto& k : g->kids) scan(k);
        return;
    }
  };
  scan(f);

  VarTypes out;
  for (auto& [name, n] : arity) {
    TypePtr ty = terms::nat_type();
    if (is_seq.count(name)) {
      ty = terms::seq_of(terms::nat_type());
    } else {
      for (int i = 0; i < n; ++i) ty = terms::arrow(terms::nat_type(), ty);
    }
    out.emplace_back(name, ty);
  }
  return out;
}

}  // namespace nsa::semantics
