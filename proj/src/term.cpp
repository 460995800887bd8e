// term.cpp
// Copyright (c) 2026, the nsa-extract authors
// Licensed under the Apache License Version 2.0.
#include "nsa/term.hpp"

#include <algorithm>
#include <set>

#include "nsa/sexp.hpp"

namespace nsa::terms {

// ---------------------------------------------------------------- types ----

TypePtr nat_type() {
  static TypePtr t = std::make_shared<FinType>(FinType{FinType::Kind::Nat, nullptr, nullptr, nullptr});
  return t;
}

TypePtr arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<FinType>(FinType{FinType::Kind::Arrow, std::move(dom), std::move(cod), nullptr});
}

TypePtr seq_of(TypePtr elem) {
  return std::make_shared<FinType>(FinType{FinType::Kind::Seq, nullptr, nullptr, std::move(elem)});
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FinType::Kind::Nat: return true;
    case FinType::Kind::Arrow:
      return type_equal(a->dom, b->dom) && type_equal(a->cod, b->cod);
    case FinType::Kind::Seq: return type_equal(a->elem, b->elem);
  }
  return false;
}

std::string type_to_string(const TypePtr& t) {
  switch (t->kind) {
    case FinType::Kind::Nat: return "Nat";
    case FinType::Kind::Arrow:
      return "(-> " + type_to_string(t->dom) + " " + type_to_string(t->cod) + ")";
    case FinType::Kind::Seq: return "(seq " + type_to_string(t->elem) + ")";
  }
  return "?";
}

static TypePtr type_from_sexp(const sexp::Node& n) {
  if (n.is_symbol("Nat")) return nat_type();
  if (n.is_list() && n.size() >= 1 && n[0].is_symbol("->")) {
    if (n.size() < 3) throw sexp::SyntaxError("(-> ...) needs at least two types", n.pos);
    // (-> a b c) associates to the right
    TypePtr t = type_from_sexp(n[n.size() - 1]);
    for (std::size_t i = n.size() - 2; i >= 1; --i) t = arrow(type_from_sexp(n[i]), t);
    return t;
  }
  if (n.is_list() && n.size() == 2 && n[0].is_symbol("seq"))
    return seq_of(type_from_sexp(n[1]));
  throw sexp::SyntaxError("unknown type form", n.pos);
}

TypePtr parse_type(const std::string& text) { return type_from_sexp(sexp::parse(text)); }

// ---------------------------------------------------------------- terms ----

namespace {
TermPtr mk(TermKind k, std::vector<TermPtr> kids) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->kids = std::move(kids);
  return t;
}
}  // namespace

TermPtr var(const std::string& name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = name;
  return t;
}

TermPtr lam(const std::string& binder, TypePtr ty, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Lam;
  t->name = binder;
  t->binder_type = std::move(ty);
  t->kids = {std::move(body)};
  return t;
}

TermPtr app(TermPtr fn, TermPtr arg) { return mk(TermKind::App, {std::move(fn), std::move(arg)}); }

TermPtr lit(std::uint64_t n) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Lit;
  t->lit = n;
  return t;
}

TermPtr succ(TermPtr t) { return mk(TermKind::Succ, {std::move(t)}); }
TermPtr rec(TermPtr base, TermPtr step, TermPtr n) {
  return mk(TermKind::Rec, {std::move(base), std::move(step), std::move(n)});
}
TermPtr seq_lit(std::vector<TermPtr> elems) { return mk(TermKind::SeqLit, std::move(elems)); }
TermPtr len(TermPtr s) { return mk(TermKind::Len, {std::move(s)}); }
TermPtr concat(TermPtr s, TermPtr t) { return mk(TermKind::Concat, {std::move(s), std::move(t)}); }
TermPtr restrict_seq(TermPtr s, TermPtr n) { return mk(TermKind::Restrict, {std::move(s), std::move(n)}); }
TermPtr index_seq(TermPtr s, TermPtr i) { return mk(TermKind::Index, {std::move(s), std::move(i)}); }
TermPtr max_seq(TermPtr s) { return mk(TermKind::MaxSeq, {std::move(s)}); }

static void free_vars(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::Lam: {
      bool fresh = bound.insert(t->name).second;
      free_vars(t->kids[0], bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    default:
      for (auto& k : t->kids) free_vars(k, bound, out);
      return;
  }
}

bool is_closed(const TermPtr& t) {
  std::set<std::string> bound, free;
  free_vars(t, bound, free);
  return free.empty();
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: return a->name == b->name;
    case TermKind::Lit: return a->lit == b->lit;
    case TermKind::Lam:
      if (a->name != b->name || !type_equal(a->binder_type, b->binder_type)) return false;
      break;
    default: break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!term_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ------------------------------------------------------------- checking ----

TypePtr type_check(const TermPtr& t, const TypeContext& ctx) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = ctx.find(t->name);
      if (it == ctx.end())
        throw TypeError(TypeError::Code::UnboundVariable, "unbound variable: " + t->name);
      return it->second;
    }
    case TermKind::Lam: {
      TypeContext inner = ctx;
      inner[t->name] = t->binder_type;
      return arrow(t->binder_type, type_check(t->kids[0], inner));
    }
    case TermKind::App: {
      TypePtr f = type_check(t->kids[0], ctx);
      TypePtr a = type_check(t->kids[1], ctx);
      if (f->kind != FinType::Kind::Arrow)
        throw TypeError(TypeError::Code::TypeMismatch,
                        "application of non-arrow type " + type_to_string(f));
      if (!type_equal(f->dom, a))
        throw TypeError(TypeError::Code::TypeMismatch,
                        "argument type " + type_to_string(a) + " does not match domain " +
                            type_to_string(f->dom));
      return f->cod;
    }
    case TermKind::Lit: return nat_type();
    case TermKind::Succ: {
      if (!type_equal(type_check(t->kids[0], ctx), nat_type()))
        throw TypeError(TypeError::Code::TypeMismatch, "succ needs a Nat");
      return nat_type();
    }
    case TermKind::Rec: {
      TypePtr rho = type_check(t->kids[0], ctx);
      TypePtr st = type_check(t->kids[1], ctx);
      TypePtr expect = arrow(nat_type(), arrow(rho, rho));
      if (!type_equal(st, expect))
        throw TypeError(TypeError::Code::TypeMismatch,
                        "recursor step has type " + type_to_string(st) + ", expected " +
                            type_to_string(expect));
      if (!type_equal(type_check(t->kids[2], ctx), nat_type()))
        throw TypeError(TypeError::Code::TypeMismatch, "recursor index must be Nat");
      return rho;
    }
    case TermKind::SeqLit: {
      if (t->kids.empty())
        throw TypeError(TypeError::Code::TypeMismatch,
                        "cannot infer the element type of (seq) without elements");
      TypePtr e = type_check(t->kids[0], ctx);
      for (std::size_t i = 1; i < t->kids.size(); ++i)
        if (!type_equal(type_check(t->kids[i], ctx), e))
          throw TypeError(TypeError::Code::TypeMismatch, "mixed element types in sequence literal");
      return seq_of(e);
    }
    case TermKind::Len: {
      TypePtr s = type_check(t->kids[0], ctx);
      if (s->kind != FinType::Kind::Seq)
        throw TypeError(TypeError::Code::TypeMismatch, "len needs a sequence");
      return nat_type();
    }
    case TermKind::Concat: {
      TypePtr s = type_check(t->kids[0], ctx);
      TypePtr u = type_check(t->kids[1], ctx);
      if (s->kind != FinType::Kind::Seq || !type_equal(s, u))
        throw TypeError(TypeError::Code::TypeMismatch, "concat needs two sequences of one type");
      return s;
    }
    case TermKind::Restrict: {
      TypePtr s = type_check(t->kids[0], ctx);
      if (s->kind != FinType::Kind::Seq)
        throw TypeError(TypeError::Code::TypeMismatch, "restrict needs a sequence");
      if (!type_equal(type_check(t->kids[1], ctx), nat_type()))
        throw TypeError(TypeError::Code::TypeMismatch, "restrict index must be Nat");
      return s;
    }
    case TermKind::Index: {
      TypePtr s = type_check(t->kids[0], ctx);
      if (s->kind != FinType::Kind::Seq)
        throw TypeError(TypeError::Code::TypeMismatch, "index needs a sequence");
      if (!type_equal(type_check(t->kids[1], ctx), nat_type()))
        throw TypeError(TypeError::Code::TypeMismatch, "index position must be Nat");
      return s->elem;
    }
    case TermKind::MaxSeq: {
      TypePtr s = type_check(t->kids[0], ctx);
      if (s->kind != FinType::Kind::Seq || s->elem->kind != FinType::Kind::Nat)
        throw TypeError(TypeError::Code::TypeMismatch, "max needs a Nat sequence");
      return nat_type();
    }
  }
  throw TypeError(TypeError::Code::TypeMismatch, "malformed term");
}

// --------------------------------------------------------------- values ----

ValuePtr nat_value(std::uint64_t n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Nat;
  v->nat = n;
  return v;
}

ValuePtr seq_value(std::vector<ValuePtr> elems) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Seq;
  v->seq = std::move(elems);
  return v;
}

ValuePtr host_fn(std::function<ValuePtr(const ValuePtr&)> f) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::HostFn;
  v->host = std::move(f);
  return v;
}

ValuePtr host_nat_fn(std::function<std::uint64_t(std::uint64_t)> f) {
  return host_fn([f = std::move(f)](const ValuePtr& a) {
    if (a->kind != Value::Kind::Nat)
      throw EvalError(EvalError::Code::BadApplication, "host function expects a Nat");
    return nat_value(f(a->nat));
  });
}

bool value_equal(const ValuePtr& a, const ValuePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Value::Kind::Nat: return a->nat == b->nat;
    case Value::Kind::Seq:
      if (a->seq.size() != b->seq.size()) return false;
      for (std::size_t i = 0; i < a->seq.size(); ++i)
        if (!value_equal(a->seq[i], b->seq[i])) return false;
      return true;
    default: return a.get() == b.get();  // function values compare by identity
  }
}

std::string value_to_string(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Nat: return std::to_string(v->nat);
    case Value::Kind::Seq: {
      std::string out = "(seq";
      for (auto& e : v->seq) out += " " + value_to_string(e);
      return out + ")";
    }
    case Value::Kind::Closure: return "<closure>";
    case Value::Kind::HostFn: return "<host-fn>";
  }
  return "?";
}

// ----------------------------------------------------------- evaluation ----

namespace {

using Env = std::shared_ptr<const EnvNode>;

Env bind(const Env& env, const std::string& name, ValuePtr v) {
  return std::make_shared<EnvNode>(EnvNode{name, std::move(v), env});
}

const ValuePtr* lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

ValuePtr eval(const TermPtr& t, const Env& env);

ValuePtr apply_value(const ValuePtr& f, const ValuePtr& a) {
  switch (f->kind) {
    case Value::Kind::Closure:
      return eval(f->lam_term->kids[0], bind(f->env, f->lam_term->name, a));
    case Value::Kind::HostFn: return f->host(a);
    default:
      throw EvalError(EvalError::Code::BadApplication, "applied a non-function value");
  }
}

std::uint64_t nat_of(const ValuePtr& v, const char* what) {
  if (v->kind != Value::Kind::Nat)
    throw EvalError(EvalError::Code::BadApplication, std::string(what) + " must be a Nat");
  return v->nat;
}

ValuePtr eval(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case TermKind::Var: {
      const ValuePtr* v = lookup(env, t->name);
      if (!v) throw EvalError(EvalError::Code::NotClosed, "unbound variable at evaluation: " + t->name);
      return *v;
    }
    case TermKind::Lam: {
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Closure;
      v->lam_term = t;
      v->env = env;
      return v;
    }
    case TermKind::App: return apply_value(eval(t->kids[0], env), eval(t->kids[1], env));
    case TermKind::Lit: return nat_value(t->lit);
    case TermKind::Succ: return nat_value(nat_of(eval(t->kids[0], env), "succ argument") + 1);
    case TermKind::Rec: {
      ValuePtr acc = eval(t->kids[0], env);
      ValuePtr step = eval(t->kids[1], env);
      std::uint64_t n = nat_of(eval(t->kids[2], env), "recursor index");
      for (std::uint64_t i = 0; i < n; ++i)
        acc = apply_value(apply_value(step, nat_value(i)), acc);
      return acc;
    }
    case TermKind::SeqLit: {
      std::vector<ValuePtr> elems;
      elems.reserve(t->kids.size());
      for (auto& k : t->kids) elems.push_back(eval(k, env));
      return seq_value(std::move(elems));
    }
    case TermKind::Len: {
      ValuePtr s = eval(t->kids[0], env);
      return nat_value(s->seq.size());
    }
    case TermKind::Concat: {
      ValuePtr s = eval(t->kids[0], env);
      ValuePtr u = eval(t->kids[1], env);
      std::vector<ValuePtr> elems = s->seq;
      elems.insert(elems.end(), u->seq.begin(), u->seq.end());
      return seq_value(std::move(elems));
    }
    case TermKind::Restrict: {
      ValuePtr s = eval(t->kids[0], env);
      std::uint64_t n = nat_of(eval(t->kids[1], env), "restrict index");
      if (n >= s->seq.size())
        throw EvalError(EvalError::Code::OutOfDomain,
                        "restrict index " + std::to_string(n) + " not below length " +
                            std::to_string(s->seq.size()));
      return seq_value(std::vector<ValuePtr>(s->seq.begin(), s->seq.begin() + n + 1));
    }
    case TermKind::Index: {
      ValuePtr s = eval(t->kids[0], env);
      std::uint64_t i = nat_of(eval(t->kids[1], env), "index position");
      if (i >= s->seq.size())
        throw EvalError(EvalError::Code::OutOfDomain,
                        "index " + std::to_string(i) + " beyond length " +
                            std::to_string(s->seq.size()));
      return s->seq[i];
    }
    case TermKind::MaxSeq: {
      ValuePtr s = eval(t->kids[0], env);
      std::uint64_t m = 0;
      for (auto& e : s->seq) m = std::max(m, nat_of(e, "max element"));
      return nat_value(m);
    }
  }
  throw EvalError(EvalError::Code::BadApplication, "malformed term");
}

}  // namespace

ValuePtr evaluate(const TermPtr& t, const std::vector<ValuePtr>& args) {
  if (!is_closed(t)) throw EvalError(EvalError::Code::NotClosed, "evaluate needs a closed term");
  ValuePtr v = eval(t, nullptr);
  for (auto& a : args) v = apply_value(v, a);
  return v;
}

std::uint64_t seq_max(const std::vector<std::uint64_t>& s) {
  std::uint64_t m = 0;
  for (auto x : s) m = std::max(m, x);
  return m;
}

// ------------------------------------------------------------- printing ----

static void print(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Var: out += t->name; return;
    case TermKind::Lit: out += std::to_string(t->lit); return;
    case TermKind::Lam:
      out += "(lam (" + t->name + " " + type_to_string(t->binder_type) + ") ";
      print(t->kids[0], out);
      out += ")";
      return;
    case TermKind::App: {
      // flatten nested applications: (app f a b ...)
      std::vector<TermPtr> args;
      TermPtr head = t;
      while (head->kind == TermKind::App) {
        args.push_back(head->kids[1]);
        head = head->kids[0];
      }
      out += "(app ";
      print(head, out);
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        out += " ";
        print(*it, out);
      }
      out += ")";
      return;
    }
    case TermKind::Succ:
      out += "(succ ";
      print(t->kids[0], out);
      out += ")";
      return;
    case TermKind::Rec:
      out += "(rec ";
      print(t->kids[0], out);
      out += " ";
      print(t->kids[1], out);
      out += " ";
      print(t->kids[2], out);
      out += ")";
      return;
    case TermKind::SeqLit: {
      out += "(seq";
      for (auto& k : t->kids) {
        out += " ";
        print(k, out);
      }
      out += ")";
      return;
    }
    case TermKind::Len:
      out += "(len ";
      print(t->kids[0], out);
      out += ")";
      return;
    case TermKind::Concat:
      out += "(concat ";
      print(t->kids[0], out);
      out += " ";
      print(t->kids[1], out);
      out += ")";
      return;
    case TermKind::Restrict:
      out += "(restrict ";
      print(t->kids[0], out);
      out += " ";
      print(t->kids[1], out);
      out += ")";
      return;
    case TermKind::Index:
      out += "(index ";
      print(t->kids[0], out);
      out += " ";
      print(t->kids[1], out);
      out += ")";
      return;
    case TermKind::MaxSeq:
      out += "(max ";
      print(t->kids[0], out);
      out += ")";
      return;
  }
}

std::string term_to_string(const TermPtr& t) {
  std::string out;
  print(t, out);
  return out;
}

// -------------------------------------------------------------- parsing ----

static TermPtr term_from_sexp(const sexp::Node& n) {
  if (n.kind == sexp::Node::Kind::Number) return lit(n.num);
  if (n.kind == sexp::Node::Kind::Symbol) return var(n.sym);
  if (n.size() == 0) throw sexp::SyntaxError("empty term", n.pos);
  const sexp::Node& head = n[0];
  auto need = [&](std::size_t k, const char* what) {
    if (n.size() != k + 1)
      throw sexp::SyntaxError(std::string(what) + " takes " + std::to_string(k) + " arguments",
                              n.pos);
  };
  if (head.is_symbol("lam")) {
    need(2, "lam");
    const sexp::Node& b = n[1];
    if (!b.is_list() || b.size() != 2 || b[0].kind != sexp::Node::Kind::Symbol)
      throw sexp::SyntaxError("lam binder must be (name type)", b.pos);
    return lam(b[0].sym, type_from_sexp(b[1]), term_from_sexp(n[2]));
  }
  if (head.is_symbol("app")) {
    if (n.size() < 3) throw sexp::SyntaxError("app needs a function and arguments", n.pos);
    TermPtr t = term_from_sexp(n[1]);
    for (std::size_t i = 2; i < n.size(); ++i) t = app(t, term_from_sexp(n[i]));
    return t;
  }
  if (head.is_symbol("seq")) {
    std::vector<TermPtr> elems;
    for (std::size_t i = 1; i < n.size(); ++i) elems.push_back(term_from_sexp(n[i]));
    return seq_lit(std::move(elems));
  }
  if (head.is_symbol("succ")) { need(1, "succ"); return succ(term_from_sexp(n[1])); }
  if (head.is_symbol("rec")) {
    need(3, "rec");
    return rec(term_from_sexp(n[1]), term_from_sexp(n[2]), term_from_sexp(n[3]));
  }
  if (head.is_symbol("len")) { need(1, "len"); return len(term_from_sexp(n[1])); }
  if (head.is_symbol("concat")) {
    need(2, "concat");
    return concat(term_from_sexp(n[1]), term_from_sexp(n[2]));
  }
  if (head.is_symbol("restrict")) {
    need(2, "restrict");
    return restrict_seq(term_from_sexp(n[1]), term_from_sexp(n[2]));
  }
  if (head.is_symbol("index")) {
    need(2, "index");
    return index_seq(term_from_sexp(n[1]), term_from_sexp(n[2]));
  }
  if (head.is_symbol("max")) { need(1, "max"); return max_seq(term_from_sexp(n[1])); }
  throw sexp::SyntaxError("unknown term form", n.pos);
}

TermPtr parse_term(const std::string& text) { return term_from_sexp(sexp::parse(text)); }

}  // namespace nsa::terms
