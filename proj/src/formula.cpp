// formula.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/formula.hpp"

#include <algorithm>
#include <map>

#include "nsa/sexp.hpp"

namespace nsa::formulas {

using terms::arrow;
using terms::nat_type;
using terms::seq_of;
using terms::type_equal;
using terms::type_to_string;

// --------------------------------------------------------- formula terms ----

FTermPtr fvar(const std::string& name) {
  auto t = std::make_shared<FTerm>();
  t->kind = FTerm::Kind::Var;
  t->name = name;
  return t;
}

FTermPtr flit(std::uint64_t n) {
  auto t = std::make_shared<FTerm>();
  t->kind = FTerm::Kind::Lit;
  t->lit = n;
  return t;
}

FTermPtr fapp(FTermPtr fn, FTermPtr arg) {
  auto t = std::make_shared<FTerm>();
  t->kind = FTerm::Kind::App;
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  return t;
}

FTermPtr fapp(FTermPtr fn, std::initializer_list<FTermPtr> args) {
  FTermPtr t = std::move(fn);
  for (auto& a : args) t = fapp(t, a);
  return t;
}

FTermPtr fsucc(FTermPtr x) {
  auto t = std::make_shared<FTerm>();
  t->kind = FTerm::Kind::Succ;
  t->sub = std::move(x);
  return t;
}

bool fterm_equal(const FTermPtr& a, const FTermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FTerm::Kind::Var: return a->name == b->name;
    case FTerm::Kind::Lit: return a->lit == b->lit;
    case FTerm::Kind::App: return fterm_equal(a->fn, b->fn) && fterm_equal(a->arg, b->arg);
    case FTerm::Kind::Succ: return fterm_equal(a->sub, b->sub);
  }
  return false;
}

void fterm_vars(const FTermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case FTerm::Kind::Var: out.insert(t->name); return;
    case FTerm::Kind::Lit: return;
    case FTerm::Kind::App:
      fterm_vars(t->fn, out);
      fterm_vars(t->arg, out);
      return;
    case FTerm::Kind::Succ: fterm_vars(t->sub, out); return;
  }
}

FTermPtr fterm_substitute(const FTermPtr& t, const std::string& var, const FTermPtr& repl) {
  switch (t->kind) {
    case FTerm::Kind::Var: return t->name == var ? repl : t;
    case FTerm::Kind::Lit: return t;
    case FTerm::Kind::App:
      return fapp(fterm_substitute(t->fn, var, repl), fterm_substitute(t->arg, var, repl));
    case FTerm::Kind::Succ: return fsucc(fterm_substitute(t->sub, var, repl));
  }
  return t;
}

// --------------------------------------------------------------- formulas ----

namespace {
std::shared_ptr<Formula> mk(FKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr atom(const std::string& rel, std::vector<FTermPtr> args) {
  auto f = mk(FKind::Atom);
  f->rel = rel;
  f->args = std::move(args);
  return f;
}

FormulaPtr fnot(FormulaPtr a) {
  auto f = mk(FKind::Not);
  f->kids = {std::move(a)};
  return f;
}

FormulaPtr fand(std::vector<FormulaPtr> kids) {
  auto f = mk(FKind::And);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr forr(std::vector<FormulaPtr> kids) {
  auto f = mk(FKind::Or);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  auto f = mk(FKind::Implies);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

namespace {
FormulaPtr quant(FKind k, const std::string& v, TypePtr ty, FormulaPtr body) {
  auto f = mk(k);
  f->var = v;
  f->var_type = std::move(ty);
  f->kids = {std::move(body)};
  return f;
}
}  // namespace

FormulaPtr forall(const std::string& v, TypePtr ty, FormulaPtr body) {
  return quant(FKind::Forall, v, std::move(ty), std::move(body));
}
FormulaPtr exists(const std::string& v, TypePtr ty, FormulaPtr body) {
  return quant(FKind::Exists, v, std::move(ty), std::move(body));
}
FormulaPtr forall_st(const std::string& v, TypePtr ty, FormulaPtr body) {
  return quant(FKind::ForallSt, v, std::move(ty), std::move(body));
}
FormulaPtr exists_st(const std::string& v, TypePtr ty, FormulaPtr body) {
  return quant(FKind::ExistsSt, v, std::move(ty), std::move(body));
}

FormulaPtr st(FTermPtr t) {
  auto f = mk(FKind::St);
  f->st_term = std::move(t);
  return f;
}

bool is_quantifier(FKind k) {
  return k == FKind::Forall || k == FKind::Exists || k == FKind::ForallSt || k == FKind::ExistsSt;
}
bool is_st_quantifier(FKind k) { return k == FKind::ForallSt || k == FKind::ExistsSt; }

// ------------------------------------------------------------- operations ----

bool is_internal(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::St: return false;
    case FKind::ForallSt:
    case FKind::ExistsSt: return false;
    case FKind::Atom:
      // approx and in-omega expand to external formulas; req stays internal
      return f->rel != "approx" && f->rel != "in-omega";
    default:
      for (auto& k : f->kids)
        if (!is_internal(k)) return false;
      return true;
  }
}

namespace {

// Q n (n <= t -> ...) / Q n (n <= t /\ ...) with n of type Nat and n not in t,
// including the membership form (in n s).
bool is_bound_guard(const FormulaPtr& g, const std::string& v) {
  if (g->kind != FKind::Atom) return false;
  if (g->rel != "<=" && g->rel != "in") return false;
  if (g->args.size() != 2) return false;
  if (g->args[0]->kind != FTerm::Kind::Var || g->args[0]->name != v) return false;
  std::set<std::string> tv;
  fterm_vars(g->args[1], tv);
  return !tv.count(v);
}

bool is_bounded_quantifier(const FormulaPtr& f) {
  if (f->kind == FKind::Forall && f->var_type->kind == terms::FinType::Kind::Nat &&
      f->kids[0]->kind == FKind::Implies) {
    const FormulaPtr& ante = f->kids[0]->kids[0];
    if (is_bound_guard(ante, f->var)) return true;
    if (ante->kind == FKind::And && !ante->kids.empty() && is_bound_guard(ante->kids[0], f->var))
      return true;
  }
  if (f->kind == FKind::Exists && f->var_type->kind == terms::FinType::Kind::Nat &&
      f->kids[0]->kind == FKind::And && !f->kids[0]->kids.empty()) {
    if (is_bound_guard(f->kids[0]->kids[0], f->var)) return true;
  }
  return false;
}

}  // namespace

FormulaPtr relativize_st(const FormulaPtr& f) {
  if (!is_internal(f))
    throw FormulaError(FormulaError::Code::NotInternal,
                       "relativize_st needs an internal formula");
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Forall:
    case FKind::Exists: {
      FormulaPtr body = relativize_st(f->kids[0]);
      if (is_bounded_quantifier(f))
        return quant(f->kind, f->var, f->var_type, body);
      return quant(f->kind == FKind::Forall ? FKind::ForallSt : FKind::ExistsSt, f->var,
                   f->var_type, body);
    }
    default: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = relativize_st(k);
      return g;
    }
  }
}

bool is_normal_form(const FormulaPtr& f) {
  FormulaPtr cur = f;
  while (cur->kind == FKind::ForallSt) cur = cur->kids[0];
  while (cur->kind == FKind::ExistsSt) cur = cur->kids[0];
  return is_internal(cur);
}

FormulaPtr erase_st(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::St: return atom("=", {flit(0), flit(0)});
    case FKind::ForallSt: return forall(f->var, f->var_type, erase_st(f->kids[0]));
    case FKind::ExistsSt: return exists(f->var, f->var_type, erase_st(f->kids[0]));
    case FKind::Atom: return f;
    default: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = erase_st(k);
      return g;
    }
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<std::pair<const Formula*, std::set<std::string>>> stack;
  struct Walk {
    std::set<std::string>& out;
    void go(const FormulaPtr& f, std::set<std::string> bound) {
      switch (f->kind) {
        case FKind::Atom: {
          std::set<std::string> vs;
          for (auto& a : f->args) fterm_vars(a, vs);
          for (auto& v : vs)
            if (!bound.count(v)) out.insert(v);
          return;
        }
        case FKind::St: {
          std::set<std::string> vs;
          fterm_vars(f->st_term, vs);
          for (auto& v : vs)
            if (!bound.count(v)) out.insert(v);
          return;
        }
        default:
          if (is_quantifier(f->kind)) {
            bound.insert(f->var);
            go(f->kids[0], bound);
            return;
          }
          for (auto& k : f->kids) go(k, bound);
          return;
      }
    }
  } walk{out};
  walk.go(f, {});
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

namespace {

FormulaPtr rename_unique(const FormulaPtr& f, std::map<std::string, std::string> renaming,
                         std::set<std::string>& used) {
  switch (f->kind) {
    case FKind::Atom: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& a : g->args)
        for (auto& [from, to] : renaming)
          if (from != to) a = fterm_substitute(a, from, fvar(to));
      return g;
    }
    case FKind::St: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& [from, to] : renaming)
        if (from != to) g->st_term = fterm_substitute(g->st_term, from, fvar(to));
      return g;
    }
    default:
      if (is_quantifier(f->kind)) {
        std::string name = fresh_name(f->var, used);
        used.insert(name);
        renaming[f->var] = name;
        return quant(f->kind, name, f->var_type, rename_unique(f->kids[0], renaming, used));
      } else {
        auto g = std::make_shared<Formula>(*f);
        for (auto& k : g->kids) k = rename_unique(k, renaming, used);
        return g;
      }
  }
}

}  // namespace

FormulaPtr ensure_unique_binders(const FormulaPtr& f) {
  std::set<std::string> used = free_vars(f);
  return rename_unique(f, {}, used);
}

// ------------------------------------------------------------ alpha equal ----

namespace {

bool fterm_alpha(const FTermPtr& a, const FTermPtr& b, const std::map<std::string, int>& la,
                 const std::map<std::string, int>& lb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FTerm::Kind::Var: {
      auto ia = la.find(a->name);
      auto ib = lb.find(b->name);
      if ((ia == la.end()) != (ib == lb.end())) return false;
      if (ia != la.end()) return ia->second == ib->second;
      return a->name == b->name;  // both free
    }
    case FTerm::Kind::Lit: return a->lit == b->lit;
    case FTerm::Kind::App:
      return fterm_alpha(a->fn, b->fn, la, lb) && fterm_alpha(a->arg, b->arg, la, lb);
    case FTerm::Kind::Succ: return fterm_alpha(a->sub, b->sub, la, lb);
  }
  return false;
}

bool alpha(const FormulaPtr& a, const FormulaPtr& b, std::map<std::string, int> la,
           std::map<std::string, int> lb, int depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
      if (a->rel != b->rel || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!fterm_alpha(a->args[i], b->args[i], la, lb)) return false;
      return true;
    case FKind::St: return fterm_alpha(a->st_term, b->st_term, la, lb);
    default:
      if (is_quantifier(a->kind)) {
        if (!type_equal(a->var_type, b->var_type)) return false;
        la[a->var] = depth;
        lb[b->var] = depth;
        return alpha(a->kids[0], b->kids[0], la, lb, depth + 1);
      }
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha(a->kids[i], b->kids[i], la, lb, depth)) return false;
      return true;
  }
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) { return alpha(a, b, {}, {}, 0); }

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
      if (a->rel != b->rel || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!fterm_equal(a->args[i], b->args[i])) return false;
      return true;
    case FKind::St: return fterm_equal(a->st_term, b->st_term);
    default:
      if (is_quantifier(a->kind) &&
          (a->var != b->var || !type_equal(a->var_type, b->var_type)))
        return false;
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!formula_equal(a->kids[i], b->kids[i])) return false;
      return true;
  }
}

// ---------------------------------------------------------- substitution ----

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FTermPtr& t) {
  switch (f->kind) {
    case FKind::Atom: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& a : g->args) a = fterm_substitute(a, var, t);
      return g;
    }
    case FKind::St: {
      auto g = std::make_shared<Formula>(*f);
      g->st_term = fterm_substitute(g->st_term, var, t);
      return g;
    }
    default:
      if (is_quantifier(f->kind)) {
        if (f->var == var) return f;  // shadowed
        return quant(f->kind, f->var, f->var_type, substitute(f->kids[0], var, t));
      } else {
        auto g = std::make_shared<Formula>(*f);
        for (auto& k : g->kids) k = substitute(k, var, t);
        return g;
      }
  }
}

// --------------------------------------------------------------- positions ----

FormulaPtr subformula_at(const FormulaPtr& f, const Position& pos) {
  FormulaPtr cur = f;
  for (int i : pos) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->kids.size())
      throw std::out_of_range("bad formula position");
    cur = cur->kids[i];
  }
  return cur;
}

FormulaPtr replace_at(const FormulaPtr& f, const Position& pos, const FormulaPtr& repl) {
  if (pos.empty()) return repl;
  auto g = std::make_shared<Formula>(*f);
  Position rest(pos.begin() + 1, pos.end());
  g->kids[pos[0]] = replace_at(f->kids[pos[0]], rest, repl);
  return g;
}

// ----------------------------------------------------------- macro pass ----

namespace {

bool guard_is_nonstandard(const FormulaPtr& g, const std::string& v) {
  // (not (st v))
  return g->kind == FKind::Not && g->kids[0]->kind == FKind::St &&
         g->kids[0]->st_term->kind == FTerm::Kind::Var && g->kids[0]->st_term->name == v;
}

}  // namespace

FormulaPtr expand_macros(const FormulaPtr& f, std::set<std::string>& used) {
  // 1. the guarded-quantifier reading of "at infinite indices": a block
  //    (forall N..M) [not st N /\ not st M -> phi] becomes
  //    (forall N..M) [(forall-st n)(n <= N /\ n <= M) -> phi]
  if (f->kind == FKind::Forall) {
    std::vector<std::pair<std::string, TypePtr>> prefix;
    FormulaPtr cur = f;
    while (cur->kind == FKind::Forall) {
      prefix.emplace_back(cur->var, cur->var_type);
      cur = cur->kids[0];
    }
    if (cur->kind == FKind::Implies) {
      std::vector<FormulaPtr> guards =
          cur->kids[0]->kind == FKind::And ? cur->kids[0]->kids
                                           : std::vector<FormulaPtr>{cur->kids[0]};
      if (guards.size() == prefix.size()) {
        bool all = true;
        for (std::size_t i = 0; i < prefix.size(); ++i)
          if (!guard_is_nonstandard(guards[i], prefix[i].first)) all = false;
        if (all && !prefix.empty()) {
          std::string n = fresh_name("n", used);
          used.insert(n);
          std::vector<FormulaPtr> bounds;
          for (auto& [v, ty] : prefix)
            bounds.push_back(atom("<=", {fvar(n), fvar(v)}));
          FormulaPtr guard = forall_st(
              n, nat_type(), bounds.size() == 1 ? bounds[0] : fand(std::move(bounds)));
          FormulaPtr body = implies(guard, expand_macros(cur->kids[1], used));
          for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
            body = forall(it->first, it->second, body);
          return body;
        }
      }
    }
  }
  // 2. closeness macros
  if (f->kind == FKind::Atom) {
    if (f->rel == "approx") {
      if (f->args.size() != 2)
        throw FormulaError(FormulaError::Code::Arity, "approx takes two terms");
      std::string k = fresh_name("k", used);
      used.insert(k);
      return forall_st(k, nat_type(),
                       atom("dist-lt", {f->args[0], f->args[1], fvar(k)}));
    }
    if (f->rel == "req") {
      if (f->args.size() != 2)
        throw FormulaError(FormulaError::Code::Arity, "req takes two terms");
      std::string n = fresh_name("n", used);
      used.insert(n);
      return forall(n, nat_type(),
                    atom("dist-le-pow2", {fapp(f->args[0], fvar(n)),
                                          fapp(f->args[1], fvar(n)), fvar(n)}));
    }
    return f;
  }
  if (f->kind == FKind::St) return f;
  auto g = std::make_shared<Formula>(*f);
  for (auto& k : g->kids) k = expand_macros(k, used);
  return g;
}

namespace {
void collect_all_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (auto& a : f->args) fterm_vars(a, out);
      return;
    case FKind::St: fterm_vars(f->st_term, out); return;
    default:
      if (is_quantifier(f->kind)) out.insert(f->var);
      for (auto& k : f->kids) collect_all_names(k, out);
      return;
  }
}
}  // namespace

FormulaPtr expand_macros(const FormulaPtr& f) {
  std::set<std::string> used = all_names(f);
  return expand_macros(f, used);
}

std::set<std::string> all_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_all_names(f, out);
  return out;
}

// ------------------------------------------------------- parse / print ----

namespace {

FTermPtr term_from_sexp(const sexp::Node& n) {
  if (n.kind == sexp::Node::Kind::Number) return flit(n.num);
  if (n.kind == sexp::Node::Kind::Symbol) return fvar(n.sym);
  if (n.size() == 0) throw sexp::SyntaxError("empty term", n.pos);
  if (n[0].is_symbol("app")) {
    if (n.size() < 3) throw sexp::SyntaxError("app needs a function and arguments", n.pos);
    FTermPtr t = term_from_sexp(n[1]);
    for (std::size_t i = 2; i < n.size(); ++i) t = fapp(t, term_from_sexp(n[i]));
    return t;
  }
  if (n[0].is_symbol("succ")) {
    if (n.size() != 2) throw sexp::SyntaxError("succ takes one term", n.pos);
    return fsucc(term_from_sexp(n[1]));
  }
  throw sexp::SyntaxError("unknown term form", n.pos);
}

TypePtr type_from_sexp(const sexp::Node& n) {
  if (n.is_symbol("Nat")) return nat_type();
  if (n.is_list() && n.size() >= 3 && n[0].is_symbol("->")) {
    TypePtr t = type_from_sexp(n[n.size() - 1]);
    for (std::size_t i = n.size() - 2; i >= 1; --i) t = arrow(type_from_sexp(n[i]), t);
    return t;
  }
  if (n.is_list() && n.size() == 2 && n[0].is_symbol("seq")) return seq_of(type_from_sexp(n[1]));
  throw sexp::SyntaxError("unknown type form", n.pos);
}

const std::map<std::string, int> kFixedArity = {
    {"=", 2},        {"<=", 2},          {"in", 2},  {"dist-lt", 3},
    {"dist-le", 3},  {"dist-le-pow2", 3}, {"approx", 2}, {"req", 2},
};

FormulaPtr formula_from_sexp(const sexp::Node& n) {
  if (n.kind == sexp::Node::Kind::Symbol)
    throw sexp::SyntaxError("bare symbol is not a formula", n.pos);
  if (n.kind == sexp::Node::Kind::Number)
    throw sexp::SyntaxError("bare number is not a formula", n.pos);
  if (n.size() == 0) throw sexp::SyntaxError("empty formula", n.pos);
  const sexp::Node& head = n[0];
  if (head.kind != sexp::Node::Kind::Symbol)
    throw sexp::SyntaxError("formula head must be a symbol", n.pos);
  const std::string& h = head.sym;

  auto parse_quant = [&](FKind kind) {
    if (n.size() != 3 || !n[1].is_list() || n[1].size() != 2 ||
        n[1][0].kind != sexp::Node::Kind::Symbol)
      throw sexp::SyntaxError(h + " needs a (var type) binder and a body", n.pos);
    return quant(kind, n[1][0].sym, type_from_sexp(n[1][1]), formula_from_sexp(n[2]));
  };

  if (h == "forall") return parse_quant(FKind::Forall);
  if (h == "exists") return parse_quant(FKind::Exists);
  if (h == "forall-st") return parse_quant(FKind::ForallSt);
  if (h == "exists-st") return parse_quant(FKind::ExistsSt);
  if (h == "st") {
    if (n.size() != 2) throw sexp::SyntaxError("st takes one term", n.pos);
    return st(term_from_sexp(n[1]));
  }
  if (h == "=>") {
    if (n.size() != 3) throw sexp::SyntaxError("=> takes two formulas", n.pos);
    return implies(formula_from_sexp(n[1]), formula_from_sexp(n[2]));
  }
  if (h == "not") {
    if (n.size() != 2) throw sexp::SyntaxError("not takes one formula", n.pos);
    return fnot(formula_from_sexp(n[1]));
  }
  if (h == "and" || h == "or") {
    if (n.size() < 3) throw sexp::SyntaxError(h + " takes at least two formulas", n.pos);
    std::vector<FormulaPtr> kids;
    for (std::size_t i = 1; i < n.size(); ++i) kids.push_back(formula_from_sexp(n[i]));
    return h == "and" ? fand(std::move(kids)) : forr(std::move(kids));
  }
  if (h == "in-omega") {
    // notation for "the index is infinite": expands at parse time
    if (n.size() != 2) throw FormulaError(FormulaError::Code::Arity, "in-omega takes one term");
    return fnot(st(term_from_sexp(n[1])));
  }
  // atom
  auto it = kFixedArity.find(h);
  if (it != kFixedArity.end() && static_cast<int>(n.size()) - 1 != it->second)
    throw FormulaError(FormulaError::Code::Arity,
                       h + " takes " + std::to_string(it->second) + " arguments");
  std::vector<FTermPtr> args;
  for (std::size_t i = 1; i < n.size(); ++i) args.push_back(term_from_sexp(n[i]));
  return atom(h, std::move(args));
}

void print_term(const FTermPtr& t, std::string& out) {
  switch (t->kind) {
    case FTerm::Kind::Var: out += t->name; return;
    case FTerm::Kind::Lit: out += std::to_string(t->lit); return;
    case FTerm::Kind::App: {
      std::vector<FTermPtr> args;
      FTermPtr head = t;
      while (head->kind == FTerm::Kind::App) {
        args.push_back(head->arg);
        head = head->fn;
      }
      out += "(app ";
      print_term(head, out);
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        out += " ";
        print_term(*it, out);
      }
      out += ")";
      return;
    }
    case FTerm::Kind::Succ:
      out += "(succ ";
      print_term(t->sub, out);
      out += ")";
      return;
  }
}

void print_formula(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case FKind::Atom: {
      out += "(" + f->rel;
      for (auto& a : f->args) {
        out += " ";
        print_term(a, out);
      }
      out += ")";
      return;
    }
    case FKind::St:
      out += "(st ";
      print_term(f->st_term, out);
      out += ")";
      return;
    case FKind::Not:
      out += "(not ";
      print_formula(f->kids[0], out);
      out += ")";
      return;
    case FKind::And:
    case FKind::Or: {
      out += f->kind == FKind::And ? "(and" : "(or";
      for (auto& k : f->kids) {
        out += " ";
        print_formula(k, out);
      }
      out += ")";
      return;
    }
    case FKind::Implies:
      out += "(=> ";
      print_formula(f->kids[0], out);
      out += " ";
      print_formula(f->kids[1], out);
      out += ")";
      return;
    case FKind::Forall:
    case FKind::Exists:
    case FKind::ForallSt:
    case FKind::ExistsSt: {
      const char* name = f->kind == FKind::Forall     ? "forall"
                         : f->kind == FKind::Exists   ? "exists"
                         : f->kind == FKind::ForallSt ? "forall-st"
                                                      : "exists-st";
      out += "(" + std::string(name) + " (" + f->var + " " + type_to_string(f->var_type) + ") ";
      print_formula(f->kids[0], out);
      out += ")";
      return;
    }
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  return ensure_unique_binders(formula_from_sexp(sexp::parse(text)));
}

std::string formula_to_string(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

}  // namespace nsa::formulas
