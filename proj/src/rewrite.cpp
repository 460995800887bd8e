// rewrite.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace nsa::rewrite {

using namespace formulas;
using terms::FinType;
using terms::nat_type;
using terms::seq_of;
using terms::TypePtr;

namespace {

struct QuantEntry {
  FKind kind;
  std::string var;
  TypePtr ty;
};

FKind flip_st(FKind k) { return k == FKind::ForallSt ? FKind::ExistsSt : FKind::ForallSt; }

FormulaPtr wrap_quants(const std::vector<QuantEntry>& qs, FormulaPtr core) {
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
    switch (it->kind) {
      case FKind::Forall: core = forall(it->var, it->ty, core); break;
      case FKind::Exists: core = exists(it->var, it->ty, core); break;
      case FKind::ForallSt: core = forall_st(it->var, it->ty, core); break;
      case FKind::ExistsSt: core = exists_st(it->var, it->ty, core); break;
      default: throw RewriteError(RewriteError::Code::ShapeMismatch, "not a quantifier");
    }
  }
  return core;
}

FormulaPtr peel_st_prefix(FormulaPtr f, std::vector<QuantEntry>& out) {
  while (is_st_quantifier(f->kind)) {
    out.push_back({f->kind, f->var, f->var_type});
    f = f->kids[0];
  }
  return f;
}

void assert_no_capture(const std::vector<QuantEntry>& qs, const FormulaPtr& sibling) {
  std::set<std::string> fv = free_vars(sibling);
  for (auto& q : qs)
    if (fv.count(q.var))
      throw RewriteError(RewriteError::Code::BlockedByBinding,
                         "variable " + q.var + " would be captured while pulling");
}

// ------------------------------------------------------------------ pull ----

FormulaPtr pull(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::St: return f;
    case FKind::Not: {
      FormulaPtr inner = pull(f->kids[0]);
      std::vector<QuantEntry> qs;
      FormulaPtr core = peel_st_prefix(inner, qs);
      for (auto& q : qs) q.kind = flip_st(q.kind);
      return wrap_quants(qs, fnot(core));
    }
    case FKind::And:
    case FKind::Or: {
      std::vector<std::vector<QuantEntry>> prefixes;
      std::vector<FormulaPtr> cores;
      for (auto& k : f->kids) {
        std::vector<QuantEntry> qs;
        cores.push_back(peel_st_prefix(pull(k), qs));
        prefixes.push_back(std::move(qs));
      }
      // a peeled variable must not occur in the other conjuncts
      std::vector<QuantEntry> prefix;
      for (std::size_t i = 0; i < cores.size(); ++i) {
        for (std::size_t j = 0; j < cores.size(); ++j)
          if (i != j) assert_no_capture(prefixes[i], cores[j]);
        prefix.insert(prefix.end(), prefixes[i].begin(), prefixes[i].end());
      }
      FormulaPtr core =
          f->kind == FKind::And ? fand(std::move(cores)) : forr(std::move(cores));
      return wrap_quants(prefix, core);
    }
    case FKind::Implies: {
      FormulaPtr a = pull(f->kids[0]);
      FormulaPtr b = pull(f->kids[1]);
      std::vector<QuantEntry> bq, aq;
      FormulaPtr bcore = peel_st_prefix(b, bq);
      FormulaPtr acore = peel_st_prefix(a, aq);
      assert_no_capture(bq, acore);
      assert_no_capture(aq, bcore);
      for (auto& q : aq) q.kind = flip_st(q.kind);
      std::vector<QuantEntry> prefix = bq;
      prefix.insert(prefix.end(), aq.begin(), aq.end());
      return wrap_quants(prefix, implies(acore, bcore));
    }
    case FKind::Forall:
    case FKind::Exists: {
      FormulaPtr body = pull(f->kids[0]);
      // a universal quantifier lets forall-st float out, an existential
      // lets exists-st float out; the other kind stays put
      FKind floats = f->kind == FKind::Forall ? FKind::ForallSt : FKind::ExistsSt;
      std::vector<QuantEntry> qs;
      while (body->kind == floats) {
        qs.push_back({body->kind, body->var, body->var_type});
        body = body->kids[0];
      }
      FormulaPtr core = f->kind == FKind::Forall ? forall(f->var, f->var_type, body)
                                                 : exists(f->var, f->var_type, body);
      return wrap_quants(qs, core);
    }
    case FKind::ForallSt:
    case FKind::ExistsSt: {
      auto g = std::make_shared<Formula>(*f);
      g->kids[0] = pull(f->kids[0]);
      return g;
    }
  }
  return f;
}

// ------------------------------------------------------------- negation ----

FormulaPtr nnf_neg(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::St: return fnot(f);
    case FKind::Not: return f->kids[0];
    case FKind::And: {
      std::vector<FormulaPtr> ks;
      for (auto& k : f->kids) ks.push_back(nnf_neg(k));
      return forr(std::move(ks));
    }
    case FKind::Or: {
      std::vector<FormulaPtr> ks;
      for (auto& k : f->kids) ks.push_back(nnf_neg(k));
      return fand(std::move(ks));
    }
    case FKind::Implies: return fand({f->kids[0], nnf_neg(f->kids[1])});
    case FKind::Forall: return exists(f->var, f->var_type, nnf_neg(f->kids[0]));
    case FKind::Exists: return forall(f->var, f->var_type, nnf_neg(f->kids[0]));
    case FKind::ForallSt: return exists_st(f->var, f->var_type, nnf_neg(f->kids[0]));
    case FKind::ExistsSt: return forall_st(f->var, f->var_type, nnf_neg(f->kids[0]));
  }
  return fnot(f);
}

// ------------------------------------------------- occurrence analysis ----

enum class Occ { LowerNeg, LowerPos, UpperNeg, UpperPos, Other };

void classify_occurrences(const FormulaPtr& f, const std::string& v, int polarity,
                          std::vector<Occ>& out) {
  switch (f->kind) {
    case FKind::Atom: {
      bool lower = f->rel == "<=" && f->args.size() == 2 &&
                   f->args[0]->kind == FTerm::Kind::Var && f->args[0]->name == v;
      std::set<std::string> rhs;
      if (f->args.size() == 2) fterm_vars(f->args[1], rhs);
      if (lower && !rhs.count(v)) {
        out.push_back(polarity < 0 ? Occ::LowerNeg : Occ::LowerPos);
        return;
      }
      if (f->rel == "<=" && f->args.size() == 2 && rhs.count(v) &&
          f->args[1]->kind == FTerm::Kind::Var) {
        out.push_back(polarity < 0 ? Occ::UpperNeg : Occ::UpperPos);
        std::set<std::string> lhs;
        fterm_vars(f->args[0], lhs);
        if (lhs.count(v)) out.push_back(Occ::Other);
        return;
      }
      std::set<std::string> vs;
      for (auto& a : f->args) fterm_vars(a, vs);
      if (vs.count(v)) out.push_back(Occ::Other);
      return;
    }
    case FKind::St: {
      std::set<std::string> vs;
      fterm_vars(f->st_term, vs);
      if (vs.count(v)) out.push_back(Occ::Other);
      return;
    }
    case FKind::Not: classify_occurrences(f->kids[0], v, -polarity, out); return;
    case FKind::Implies:
      classify_occurrences(f->kids[0], v, -polarity, out);
      classify_occurrences(f->kids[1], v, polarity, out);
      return;
    default:
      if (is_quantifier(f->kind)) {
        if (f->var == v) return;  // shadowed
        classify_occurrences(f->kids[0], v, polarity, out);
        return;
      }
      for (auto& k : f->kids) classify_occurrences(k, v, polarity, out);
      return;
  }
}

// --------------------------------------------------------- subformula ops ----

FormulaPtr sub_at(const FormulaPtr& f, const Position& p) { return subformula_at(f, p); }

Position operator+(Position p, int i) {
  p.push_back(i);
  return p;
}

}  // namespace

// ------------------------------------------------------------------ rules ----

FormulaPtr rule_expand_macros(const FormulaPtr& full, const Position& pos) {
  std::set<std::string> used = all_names(full);
  return replace_at(full, pos, expand_macros(sub_at(full, pos), used));
}

FormulaPtr rule_contrapose(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::Implies)
    throw RewriteError(RewriteError::Code::ShapeMismatch, "contrapose needs an implication");
  return replace_at(full, pos, implies(nnf_neg(s->kids[1]), nnf_neg(s->kids[0])));
}

FormulaPtr rule_pull_st_quantifiers(const FormulaPtr& full, const Position& pos) {
  return replace_at(full, pos, pull(sub_at(full, pos)));
}

FormulaPtr rule_contrapose_idealisation(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  std::vector<QuantEntry> block;
  FormulaPtr cur = s;
  while (cur->kind == FKind::Forall) {
    block.push_back({FKind::Forall, cur->var, cur->var_type});
    cur = cur->kids[0];
  }
  if (cur->kind != FKind::ExistsSt)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "idealisation needs a standard existential over an internal block");
  if (cur->var_type->kind != FinType::Kind::Nat)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "the idealised witness must have type Nat");
  FormulaPtr matrix = cur->kids[0];
  if (!is_internal(matrix))
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "the matrix under the standard existential must be internal");
  std::set<std::string> used = all_names(full);
  std::string z = fresh_name("z", used);
  FormulaPtr inner =
      exists(cur->var, nat_type(),
             fand({atom("in", {fvar(cur->var), fvar(z)}), matrix}));
  return replace_at(full, pos,
                    exists_st(z, seq_of(nat_type()), wrap_quants(block, inner)));
}

namespace {

// matches (exists n Nat) (and (in n z) theta...)
struct MemberPattern {
  std::string n;
  FormulaPtr theta;
};

std::optional<MemberPattern> match_member(const FormulaPtr& f, const std::string& z) {
  if (f->kind != FKind::Exists || f->var_type->kind != FinType::Kind::Nat) return std::nullopt;
  const FormulaPtr& body = f->kids[0];
  if (body->kind != FKind::And || body->kids.empty()) return std::nullopt;
  const FormulaPtr& g = body->kids[0];
  if (g->kind != FKind::Atom || g->rel != "in" || g->args.size() != 2) return std::nullopt;
  if (g->args[0]->kind != FTerm::Kind::Var || g->args[0]->name != f->var) return std::nullopt;
  if (g->args[1]->kind != FTerm::Kind::Var || g->args[1]->name != z) return std::nullopt;
  MemberPattern m;
  m.n = f->var;
  m.theta = body->kids.size() == 2
                ? body->kids[1]
                : fand(std::vector<FormulaPtr>(body->kids.begin() + 1, body->kids.end()));
  return m;
}

bool var_occurs(const FormulaPtr& f, const std::string& v) {
  return free_vars(f).count(v) != 0;
}

}  // namespace

FormulaPtr rule_collapse_witness_by_max(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::ExistsSt || s->var_type->kind != FinType::Kind::Seq)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "collapse needs a standard existential over a sequence");
  const std::string z = s->var;
  std::set<std::string> used = all_names(full);
  std::string K = fresh_name("K", used);

  bool substitution_ok = true;
  bool found = false;

  std::function<FormulaPtr(const FormulaPtr&, bool)> walk =
      [&](const FormulaPtr& f, bool analyze_only) -> FormulaPtr {
    if (auto m = match_member(f, z)) {
      found = true;
      std::vector<Occ> occs;
      classify_occurrences(m->theta, m->n, +1, occs);
      for (Occ o : occs) {
        if (o == Occ::UpperNeg || o == Occ::UpperPos)
          throw RewriteError(RewriteError::Code::NotMonotone,
                             "witness variable " + m->n + " occurs as an upper bound");
        if (o != Occ::LowerNeg) substitution_ok = false;
      }
      if (analyze_only) return f;
      if (substitution_ok) return substitute(m->theta, m->n, fvar(K));
      return exists(m->n, nat_type(),
                    fand({atom("<=", {fvar(m->n), fvar(K)}), m->theta}));
    }
    switch (f->kind) {
      case FKind::Atom: {
        std::set<std::string> vs;
        for (auto& a : f->args) fterm_vars(a, vs);
        if (vs.count(z))
          throw RewriteError(RewriteError::Code::ShapeMismatch,
                             "sequence variable " + z + " escapes the membership pattern");
        return f;
      }
      case FKind::St: return f;
      default: {
        auto g = std::make_shared<Formula>(*f);
        for (auto& k : g->kids) k = walk(k, analyze_only);
        return g;
      }
    }
  };

  // first pass decides the mode across all patterns, second pass rewrites
  walk(s->kids[0], true);
  if (!found)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "no membership pattern for " + z + " found");
  FormulaPtr body = walk(s->kids[0], false);
  return replace_at(full, pos, exists_st(K, nat_type(), body));
}

FormulaPtr rule_push_bounded_exists(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::Exists || s->var_type->kind != FinType::Kind::Nat ||
      s->kids[0]->kind != FKind::And || s->kids[0]->kids.size() != 2)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "push needs (exists n)(bound /\\ implication)");
  const FormulaPtr& bound = s->kids[0]->kids[0];
  const FormulaPtr& body = s->kids[0]->kids[1];
  if (bound->kind != FKind::Atom || bound->rel != "<=" || bound->args.size() != 2 ||
      bound->args[0]->kind != FTerm::Kind::Var || bound->args[0]->name != s->var)
    throw RewriteError(RewriteError::Code::ShapeMismatch, "missing (<= n K) bound");
  if (body->kind != FKind::Implies)
    throw RewriteError(RewriteError::Code::ShapeMismatch, "bounded body must be an implication");
  if (var_occurs(body->kids[0], s->var))
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "witness occurs in the antecedent; cannot push");
  FormulaPtr pushed = implies(
      body->kids[0],
      exists(s->var, nat_type(), fand({bound, body->kids[1]})));
  return replace_at(full, pos, pushed);
}

FormulaPtr rule_weaken_strict_bound(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::Atom || s->rel != "dist-lt")
    throw RewriteError(RewriteError::Code::ShapeMismatch, "weaken applies to dist-lt atoms");
  return replace_at(full, pos, atom("dist-le", s->args));
}

FormulaPtr rule_introduce_witness_functional(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::Implies)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "witness introduction needs an implication");
  const FormulaPtr& ante = s->kids[0];
  const FormulaPtr& cons = s->kids[1];
  if (!is_normal_form(ante) || !is_normal_form(cons))
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "both sides must be in normal form");
  std::vector<QuantEntry> prefix;
  FormulaPtr cur = ante;
  while (cur->kind == FKind::ForallSt) {
    prefix.push_back({FKind::ForallSt, cur->var, cur->var_type});
    cur = cur->kids[0];
  }
  if (prefix.empty() || cur->kind != FKind::ExistsSt)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "antecedent must be (forall-st ...)+ (exists-st K) D");
  QuantEntry witness{cur->kind, cur->var, cur->var_type};
  FormulaPtr matrix = cur->kids[0];
  if (!is_internal(matrix))
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "antecedent matrix must be internal (a single standard witness)");

  std::set<std::string> used = all_names(full);
  std::string psi = fresh_name("Psi", used);
  // the functional consumes the prefix variables innermost first
  TypePtr ty = witness.ty;
  for (auto& q : prefix) ty = terms::arrow(q.ty, ty);
  FTermPtr applied = fvar(psi);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    applied = fapp(applied, fvar(it->var));

  FormulaPtr new_ante = substitute(matrix, witness.var, applied);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    new_ante = forall_st(it->var, it->ty, new_ante);
  return replace_at(full, pos, forall_st(psi, ty, implies(new_ante, cons)));
}

namespace {
FormulaPtr strip_st_quantifiers(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::ForallSt: return forall(f->var, f->var_type, strip_st_quantifiers(f->kids[0]));
    case FKind::ExistsSt: return exists(f->var, f->var_type, strip_st_quantifiers(f->kids[0]));
    case FKind::Atom:
    case FKind::St: return f;
    default: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = strip_st_quantifiers(k);
      return g;
    }
  }
}
}  // namespace

FormulaPtr rule_drop_antecedent_st(const FormulaPtr& full, const Position& pos) {
  FormulaPtr s = sub_at(full, pos);
  if (s->kind != FKind::ForallSt || s->kids[0]->kind != FKind::Implies)
    throw RewriteError(RewriteError::Code::ShapeMismatch,
                       "drop applies to (forall-st Psi)(A -> G)");
  const FormulaPtr& impl = s->kids[0];
  FormulaPtr new_ante = strip_st_quantifiers(impl->kids[0]);
  return replace_at(
      full, pos,
      forall_st(s->var, s->var_type, implies(new_ante, impl->kids[1])));
}

// --------------------------------------------------------------- registry ----

namespace {
using RuleFn = FormulaPtr (*)(const FormulaPtr&, const Position&);
const std::vector<std::pair<std::string, RuleFn>>& registry() {
  static const std::vector<std::pair<std::string, RuleFn>> r = {
      {"expand-macros", rule_expand_macros},
      {"contrapose", rule_contrapose},
      {"pull-st-quantifiers", rule_pull_st_quantifiers},
      {"contrapose-idealisation", rule_contrapose_idealisation},
      {"collapse-witness-by-max", rule_collapse_witness_by_max},
      {"push-bounded-exists", rule_push_bounded_exists},
      {"weaken-strict-bound", rule_weaken_strict_bound},
      {"introduce-witness-functional", rule_introduce_witness_functional},
      {"drop-antecedent-st", rule_drop_antecedent_st},
  };
  return r;
}
}  // namespace

FormulaPtr apply_rule(const std::string& rule, const FormulaPtr& full, const Position& pos) {
  for (auto& [name, fn] : registry())
    if (name == rule) return fn(full, pos);
  throw RewriteError(RewriteError::Code::ShapeMismatch, "unknown rule: " + rule);
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool rule_is_equivalence(const std::string& rule) {
  return rule == "contrapose" || rule == "pull-st-quantifiers" ||
         rule == "contrapose-idealisation" || rule == "collapse-witness-by-max" ||
         rule == "push-bounded-exists" || rule == "drop-antecedent-st";
}

// ------------------------------------------------------------------ trace ----

FormulaPtr RewriteTrace::milestone(const std::string& name) const {
  for (auto& m : milestones)
    if (m.name == name) return m.formula;
  return nullptr;
}

bool RewriteTrace::replays() const {
  for (auto& s : steps) {
    FormulaPtr redo;
    try {
      redo = apply_rule(s.rule, s.before, s.pos);
    } catch (const std::exception&) {
      return false;
    }
    if (!formula_equal(redo, s.after)) return false;
  }
  return true;
}

// --------------------------------------------------------------- pipeline ----

namespace {

bool has_st(const FormulaPtr& f) { return !is_internal(f); }

// matches a nonempty internal forall block followed by a standard Nat
// existential over an internal matrix
bool match_stuck(const FormulaPtr& f) {
  int j = 0;
  FormulaPtr cur = f;
  while (cur->kind == FKind::Forall) {
    ++j;
    cur = cur->kids[0];
  }
  return j >= 1 && cur->kind == FKind::ExistsSt &&
         cur->var_type->kind == FinType::Kind::Nat && is_internal(cur->kids[0]);
}

// children-first scan for stuck patterns at maximal blocks
std::optional<Position> scan_stuck(const FormulaPtr& f, bool under_forall) {
  for (std::size_t i = 0; i < f->kids.size(); ++i) {
    bool uf = f->kind == FKind::Forall && i == 0;
    if (auto r = scan_stuck(f->kids[i], uf)) {
      Position p{static_cast<int>(i)};
      p.insert(p.end(), r->begin(), r->end());
      return p;
    }
  }
  if (!under_forall && match_stuck(f)) return Position{};
  return std::nullopt;
}

std::optional<Position> scan_contrapose(const FormulaPtr& f) {
  if (f->kind == FKind::Implies && has_st(f->kids[0]) && !has_st(f->kids[1]))
    return Position{};
  for (std::size_t i = 0; i < f->kids.size(); ++i)
    if (auto r = scan_contrapose(f->kids[i])) {
      Position p{static_cast<int>(i)};
      p.insert(p.end(), r->begin(), r->end());
      return p;
    }
  return std::nullopt;
}

void scan_atoms(const FormulaPtr& f, const std::string& rel, const Position& at,
                std::vector<Position>& out) {
  if (f->kind == FKind::Atom && f->rel == rel) out.push_back(at);
  for (std::size_t i = 0; i < f->kids.size(); ++i) {
    Position p = at;
    p.push_back(static_cast<int>(i));
    scan_atoms(f->kids[i], rel, p, out);
  }
}

struct Pipeline {
  RewriteTrace tr;
  FormulaPtr cur;
  PipelineOptions opts;
  bool convergence_recorded = false;

  bool apply(const std::string& rule, const Position& pos) {
    FormulaPtr next = apply_rule(rule, cur, pos);
    if (formula_equal(next, cur)) return false;
    tr.steps.push_back({rule, pos, cur, next});
    cur = next;
    return true;
  }

  void milestone(const std::string& name, const FormulaPtr& f) {
    tr.milestones.push_back({name, f});
  }

  void stuck_loop(const Position& abs, bool is_ante) {
    for (int guard = 0; guard < 32; ++guard) {
      Position r = abs;
      while (is_st_quantifier(sub_at(cur, r)->kind)) r.push_back(0);
      if (!match_stuck(sub_at(cur, r))) break;
      apply("contrapose-idealisation", r);
      apply("collapse-witness-by-max", r);
      if (is_ante && !convergence_recorded) {
        convergence_recorded = true;
        milestone("convergence-nf", sub_at(cur, abs));
      }
      apply("pull-st-quantifiers", abs);
    }
  }

  void normalize_sub(const Position& abs, bool is_ante) {
    FormulaPtr s = sub_at(cur, abs);
    if (is_internal(s)) return;
    switch (s->kind) {
      case FKind::Atom:
      case FKind::St: return;
      case FKind::Not:
        normalize_sub(abs + 0, is_ante);
        apply("pull-st-quantifiers", abs);
        return;
      case FKind::Forall:
      case FKind::Exists: {
        Position q = abs;
        FormulaPtr c = s;
        while (c->kind == FKind::Forall || c->kind == FKind::Exists) {
          q.push_back(0);
          c = c->kids[0];
        }
        normalize_sub(q, is_ante);
        apply("pull-st-quantifiers", abs);
        stuck_loop(abs, is_ante);
        return;
      }
      case FKind::ForallSt:
      case FKind::ExistsSt:
        normalize_sub(abs + 0, is_ante);
        apply("pull-st-quantifiers", abs);
        stuck_loop(abs, is_ante);
        return;
      default: {  // And / Or / Implies
        for (std::size_t i = 0; i < s->kids.size(); ++i)
          normalize_sub(abs + static_cast<int>(i), is_ante);
        apply("pull-st-quantifiers", abs);
        stuck_loop(abs, is_ante);
        return;
      }
    }
  }

  void side_normalize(const Position& side, bool is_ante) {
    for (int guard = 0; guard < 100; ++guard) {
      auto p = scan_contrapose(sub_at(cur, side));
      if (!p) break;
      Position absq = side;
      absq.insert(absq.end(), p->begin(), p->end());
      if (!apply("contrapose", absq)) break;
    }
    normalize_sub(side, is_ante);
    // safety net: resolve stuck patterns that materialized across levels
    for (int guard = 0; guard < 32; ++guard) {
      auto p = scan_stuck(sub_at(cur, side), false);
      if (!p) break;
      Position absq = side;
      absq.insert(absq.end(), p->begin(), p->end());
      apply("contrapose-idealisation", absq);
      apply("collapse-witness-by-max", absq);
      apply("pull-st-quantifiers", side);
    }
    if (is_ante) {
      for (int guard = 0; guard < 1000; ++guard) {
        std::vector<Position> atoms;
        scan_atoms(sub_at(cur, side), "dist-lt", side, atoms);
        if (atoms.empty()) break;
        apply("weaken-strict-bound", atoms.front());
      }
    }
    apply("pull-st-quantifiers", side);
  }

  void monotonize(const Position& side) {
    Position r = side;
    while (sub_at(cur, r)->kind == FKind::ForallSt) r.push_back(0);
    FormulaPtr s = sub_at(cur, r);
    if (s->kind != FKind::ExistsSt || s->var_type->kind != FinType::Kind::Nat) return;
    if (!is_internal(s->kids[0])) return;
    apply("contrapose-idealisation", r);
    apply("collapse-witness-by-max", r);
    FormulaPtr inner = sub_at(cur, r + 0);
    if (inner->kind == FKind::Exists && inner->kids[0]->kind == FKind::And &&
        inner->kids[0]->kids.size() == 2 &&
        inner->kids[0]->kids[1]->kind == FKind::Implies)
      apply("push-bounded-exists", r + 0);
  }

  void run(const FormulaPtr& input) {
    cur = ensure_unique_binders(input);
    tr.input = cur;
    apply("expand-macros", {});
    milestone("macro-expanded", cur);

    Position prefix;
    {
      FormulaPtr g = cur;
      while (g->kind == FKind::ForallSt) {
        prefix.push_back(0);
        g = g->kids[0];
      }
    }
    FormulaPtr body = sub_at(cur, prefix);
    if (body->kind == FKind::Implies) {
      side_normalize(prefix + 1, false);
      if (opts.monotonize_witness) monotonize(prefix + 1);
      milestone("consequent-nf", sub_at(cur, prefix + 1));
      side_normalize(prefix + 0, true);
      milestone("antecedent-nf", sub_at(cur, prefix + 0));
      milestone("implication-nf", sub_at(cur, prefix));
      apply("introduce-witness-functional", prefix);
      milestone("witness-functional", sub_at(cur, prefix));
      apply("drop-antecedent-st", prefix);
      milestone("internal-antecedent", sub_at(cur, prefix));
      apply("pull-st-quantifiers", {});
      milestone("normal-form", cur);
    } else {
      side_normalize({}, false);
      if (opts.monotonize_witness) monotonize({});
      milestone("normal-form", cur);
    }
    if (!is_normal_form(cur))
      throw RewriteError(RewriteError::Code::PipelineStuck,
                         "pipeline did not reach a normal form; blocked at: " +
                             formula_to_string(first_external_block(cur)));
    tr.final = cur;
  }

  static FormulaPtr first_external_block(const FormulaPtr& f) {
    FormulaPtr cur = f;
    while (is_st_quantifier(cur->kind)) cur = cur->kids[0];
    // find the shallowest external subformula of the matrix
    std::function<FormulaPtr(const FormulaPtr&)> seek =
        [&](const FormulaPtr& g) -> FormulaPtr {
      if (g->kind == FKind::St || is_st_quantifier(g->kind)) return g;
      for (auto& k : g->kids)
        if (!is_internal(k)) return seek(k);
      return g;
    };
    return seek(cur);
  }
};

}  // namespace

RewriteTrace normalize_formula(const FormulaPtr& f, const PipelineOptions& opts) {
  Pipeline p;
  p.opts = opts;
  p.run(f);
  return std::move(p.tr);
}

RewriteTrace normalize_implication(const FormulaPtr& ante, const FormulaPtr& cons,
                                   const PipelineOptions& opts) {
  return normalize_formula(implies(ante, cons), opts);
}

// -------------------------------------------------- single-witness bound ----

terms::TermPtr herbrand_to_bound(const terms::TermPtr& seq_term, const FormulaPtr& matrix,
                                 const std::string& witness_var) {
  using namespace terms;
  if (!is_closed(seq_term))
    throw TypeError(TypeError::Code::TypeMismatch, "the witness term must be closed");
  TypePtr ty = type_check(seq_term);
  std::vector<TypePtr> doms;
  TypePtr cur = ty;
  while (cur->kind == FinType::Kind::Arrow) {
    doms.push_back(cur->dom);
    cur = cur->cod;
  }
  if (cur->kind != FinType::Kind::Seq || cur->elem->kind != FinType::Kind::Nat)
    throw TypeError(TypeError::Code::TypeMismatch,
                    "the witness term must produce a Nat sequence");

  // monotone in the witness: each occurrence is a lower bound in negative
  // position or an upper bound in positive position
  std::vector<Occ> occs;
  classify_occurrences(matrix, witness_var, +1, occs);
  for (Occ o : occs)
    if (o == Occ::LowerPos || o == Occ::UpperNeg || o == Occ::Other)
      throw RewriteError(RewriteError::Code::NotMonotone,
                         "matrix is not monotone in " + witness_var);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < doms.size(); ++i) names.push_back("x" + std::to_string(i));
  TermPtr appd = seq_term;
  for (std::size_t i = 0; i < doms.size(); ++i) appd = app(appd, terms::var(names[i]));
  TermPtr body = max_seq(appd);
  for (std::size_t i = doms.size(); i-- > 0;) body = lam(names[i], doms[i], body);
  return body;
}

}  // namespace nsa::rewrite
