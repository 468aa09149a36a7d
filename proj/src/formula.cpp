#include "bsc/formula.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace bsc {

Symbol act_symbol() {
  static const Symbol s = intern("act");
  return s;
}

namespace {

void add_term_vars(const Term& t, std::vector<Symbol>& out) {
  if (t.is_var()) out.push_back(t.name);
}

void sort_unique(std::vector<Symbol>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void erase_sym(std::vector<Symbol>& v, Symbol s) { v.erase(std::remove(v.begin(), v.end(), s), v.end()); }

bool is_surface(FoKind k) {
  return k == FoKind::Or || k == FoKind::Implies || k == FoKind::Iff || k == FoKind::Forall;
}

Formula finish(FoNode n) {
  n.free_vars.clear();
  n.free_act_vars.clear();
  n.quantifiers = 0;
  n.has_action_terms = false;
  n.is_core = !is_surface(n.kind);
  switch (n.kind) {
    case FoKind::True:
    case FoKind::False:
      break;
    case FoKind::Atom:
    case FoKind::Eq:
      for (const Term& t : n.terms) add_term_vars(t, n.free_vars);
      break;
    case FoKind::ActEq:
      n.has_action_terms = true;
      for (const ActionTerm* a : {&n.lhs, &n.rhs}) {
        if (a->is_var) {
          n.free_act_vars.push_back(a->var);
        } else {
          for (const Term& t : a->args) add_term_vars(t, n.free_vars);
        }
      }
      break;
    default:
      for (const Formula& k : n.kids) {
        n.free_vars.insert(n.free_vars.end(), k->free_vars.begin(), k->free_vars.end());
        n.free_act_vars.insert(n.free_act_vars.end(), k->free_act_vars.begin(), k->free_act_vars.end());
        n.quantifiers += k->quantifiers;
        n.has_action_terms = n.has_action_terms || k->has_action_terms;
        n.is_core = n.is_core && k->is_core;
      }
      break;
  }
  switch (n.kind) {
    case FoKind::Exists:
    case FoKind::Forall:
      erase_sym(n.free_vars, n.vars[0]);
      n.quantifiers += 1;
      break;
    case FoKind::Count:
      for (Symbol v : n.vars) erase_sym(n.free_vars, v);
      n.quantifiers += n.vars.size();
      break;
    case FoKind::ExistsAct:
      erase_sym(n.free_act_vars, n.vars[0]);
      n.has_action_terms = true;
      break;
    default:
      break;
  }
  sort_unique(n.free_vars);
  sort_unique(n.free_act_vars);
  return std::make_shared<const FoNode>(std::move(n));
}

FoNode node(FoKind k) {
  FoNode n;
  n.kind = k;
  return n;
}

}  // namespace

namespace fo {

Formula True() {
  static const Formula t = finish(node(FoKind::True));
  return t;
}
Formula False() {
  static const Formula f = finish(node(FoKind::False));
  return f;
}
Formula Atom(Symbol pred, std::vector<Term> args) {
  FoNode n = node(FoKind::Atom);
  n.pred = pred;
  n.terms = std::move(args);
  return finish(std::move(n));
}
Formula Eq(Term a, Term b) {
  FoNode n = node(FoKind::Eq);
  n.terms = {a, b};
  return finish(std::move(n));
}
Formula ActEq(ActionTerm a, ActionTerm b) {
  FoNode n = node(FoKind::ActEq);
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return finish(std::move(n));
}
Formula Not(Formula f) {
  FoNode n = node(FoKind::Not);
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
Formula And(std::vector<Formula> fs) {
  FoNode n = node(FoKind::And);
  n.kids = std::move(fs);
  return finish(std::move(n));
}
Formula And(Formula a, Formula b) { return And(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula Or(std::vector<Formula> fs) {
  FoNode n = node(FoKind::Or);
  n.kids = std::move(fs);
  return finish(std::move(n));
}
Formula Or(Formula a, Formula b) { return Or(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula Implies(Formula a, Formula b) {
  FoNode n = node(FoKind::Implies);
  n.kids = {std::move(a), std::move(b)};
  return finish(std::move(n));
}
Formula Iff(Formula a, Formula b) {
  FoNode n = node(FoKind::Iff);
  n.kids = {std::move(a), std::move(b)};
  return finish(std::move(n));
}
Formula Exists(Symbol v, Formula f) {
  FoNode n = node(FoKind::Exists);
  n.vars = {v};
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
Formula Forall(Symbol v, Formula f) {
  FoNode n = node(FoKind::Forall);
  n.vars = {v};
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
Formula ExistsAct(Symbol v, Formula f) {
  FoNode n = node(FoKind::ExistsAct);
  n.vars = {v};
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
Formula Count(std::vector<Symbol> vars, Formula f, std::size_t bound) {
  FoNode n = node(FoKind::Count);
  n.vars = std::move(vars);
  n.kids = {std::move(f)};
  n.bound = bound;
  return finish(std::move(n));
}

Formula mk_not(Formula f) {
  switch (f->kind) {
    case FoKind::True:
      return False();
    case FoKind::False:
      return True();
    case FoKind::Not:
      return f->kids[0];
    default:
      return Not(std::move(f));
  }
}

Formula mk_and(std::vector<Formula> fs) {
  std::vector<Formula> out;
  for (Formula& f : fs) {
    if (f->kind == FoKind::True) continue;
    if (f->kind == FoKind::False) return False();
    if (f->kind == FoKind::And) {
      for (const Formula& k : f->kids) out.push_back(k);
    } else {
      out.push_back(std::move(f));
    }
  }
  if (out.empty()) return True();
  if (out.size() == 1) return out[0];
  return And(std::move(out));
}
Formula mk_and(Formula a, Formula b) { return mk_and(std::vector<Formula>{std::move(a), std::move(b)}); }

Formula mk_or(std::vector<Formula> fs) {
  std::vector<Formula> negs;
  for (Formula& f : fs) {
    if (f->kind == FoKind::True) return True();
    if (f->kind == FoKind::False) continue;
    negs.push_back(mk_not(std::move(f)));
  }
  return mk_not(mk_and(std::move(negs)));
}
Formula mk_or(Formula a, Formula b) { return mk_or(std::vector<Formula>{std::move(a), std::move(b)}); }

Formula mk_implies(Formula a, Formula b) { return mk_or(mk_not(std::move(a)), std::move(b)); }

Formula mk_iff(Formula a, Formula b) { return mk_and(mk_implies(a, b), mk_implies(b, a)); }

Formula mk_eq(Term a, Term b) {
  if (a == b) return True();
  if (a.is_const() && b.is_const()) return False();
  if (b < a) std::swap(a, b);
  return Eq(a, b);
}

Formula mk_neq(Term a, Term b) { return mk_not(mk_eq(a, b)); }

Formula mk_act_eq(ActionTerm a, ActionTerm b) {
  if (!a.is_var && !b.is_var) {
    if (a.type != b.type || a.args.size() != b.args.size()) return False();
    std::vector<Formula> eqs;
    for (std::size_t i = 0; i < a.args.size(); ++i) eqs.push_back(mk_eq(a.args[i], b.args[i]));
    return mk_and(std::move(eqs));
  }
  if (a == b) return True();
  return ActEq(std::move(a), std::move(b));
}

Formula mk_exists(Symbol v, Formula f) {
  if (!std::binary_search(f->free_vars.begin(), f->free_vars.end(), v)) return f;
  // One-point rule: exists v. (v = t & rest)  ==  rest[v/t].
  if (f->kind == FoKind::Eq || f->kind == FoKind::And) {
    const std::vector<Formula> single{f};
    const std::vector<Formula>& conj = f->kind == FoKind::And ? f->kids : single;
    for (std::size_t i = 0; i < conj.size(); ++i) {
      const Formula& c = conj[i];
      if (c->kind != FoKind::Eq) continue;
      const Term& l = c->terms[0];
      const Term& r = c->terms[1];
      std::optional<Term> other;
      if (l.is_var() && l.name == v && r != l) other = r;
      if (r.is_var() && r.name == v && r != l) other = l;
      if (!other) continue;
      std::vector<Formula> rest;
      for (std::size_t j = 0; j < conj.size(); ++j) {
        if (j != i) rest.push_back(conj[j]);
      }
      return substitute(mk_and(std::move(rest)), {{v, *other}});
    }
  }
  return Exists(v, std::move(f));
}

Formula mk_exists(const std::vector<Symbol>& vs, Formula f) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) f = mk_exists(*it, std::move(f));
  return f;
}

Formula mk_forall(Symbol v, Formula f) { return mk_not(mk_exists(v, mk_not(std::move(f)))); }

Formula mk_forall(const std::vector<Symbol>& vs, Formula f) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) f = mk_forall(*it, std::move(f));
  return f;
}

Formula mk_count(std::vector<Symbol> vars, Formula f, std::size_t bound) {
  if (bound == 0) return False();
  if (f->kind == FoKind::False) return True();
  return Count(std::move(vars), std::move(f), bound);
}

}  // namespace fo

namespace {

// Rebuilds `n` with new children. Core nodes are rebuilt with the simplifying
// constructors, surface nodes keep their shape.
Formula rebuild(const FoNode& n, std::vector<Formula> kids, Symbol var0 = 0) {
  using namespace fo;
  const bool core = n.is_core;
  switch (n.kind) {
    case FoKind::Not:
      return core ? mk_not(kids[0]) : Not(kids[0]);
    case FoKind::And:
      return core ? mk_and(std::move(kids)) : And(std::move(kids));
    case FoKind::Or:
      return Or(std::move(kids));
    case FoKind::Implies:
      return Implies(kids[0], kids[1]);
    case FoKind::Iff:
      return Iff(kids[0], kids[1]);
    case FoKind::Exists:
      return core ? mk_exists(var0, kids[0]) : Exists(var0, kids[0]);
    case FoKind::Forall:
      return Forall(var0, kids[0]);
    case FoKind::ExistsAct:
      return ExistsAct(var0, kids[0]);
    default:
      assert(false);
      return nullptr;
  }
}

Term subst_term(const Term& t, const std::map<Symbol, Term>& objs) {
  if (!t.is_var()) return t;
  auto it = objs.find(t.name);
  return it == objs.end() ? t : it->second;
}

ActionTerm subst_action(const ActionTerm& a, const std::map<Symbol, Term>& objs,
                        const std::map<Symbol, ActionTerm>& acts) {
  if (a.is_var) {
    auto it = acts.find(a.var);
    return it == acts.end() ? a : it->second;
  }
  ActionTerm r = a;
  for (Term& t : r.args) t = subst_term(t, objs);
  return r;
}

// Variables that appear in the substitution range for keys free in `f`.
std::set<Symbol> range_vars(const Formula& f, const std::map<Symbol, Term>& objs,
                            const std::map<Symbol, ActionTerm>& acts) {
  std::set<Symbol> out;
  for (Symbol v : f->free_vars) {
    auto it = objs.find(v);
    if (it != objs.end() && it->second.is_var()) out.insert(it->second.name);
  }
  for (Symbol v : f->free_act_vars) {
    auto it = acts.find(v);
    if (it == acts.end()) continue;
    if (it->second.is_var) {
      out.insert(it->second.var);
    } else {
      for (const Term& t : it->second.args) {
        if (t.is_var()) out.insert(t.name);
      }
    }
  }
  return out;
}

bool relevant(const Formula& f, const std::map<Symbol, Term>& objs, const std::map<Symbol, ActionTerm>& acts) {
  for (Symbol v : f->free_vars) {
    if (objs.count(v)) return true;
  }
  for (Symbol v : f->free_act_vars) {
    if (acts.count(v)) return true;
  }
  return false;
}

Formula subst_rec(const Formula& f, const std::map<Symbol, Term>& objs, const std::map<Symbol, ActionTerm>& acts) {
  if (!relevant(f, objs, acts)) return f;
  const FoNode& n = *f;
  switch (n.kind) {
    case FoKind::Atom: {
      std::vector<Term> args;
      for (const Term& t : n.terms) args.push_back(subst_term(t, objs));
      return fo::Atom(n.pred, std::move(args));
    }
    case FoKind::Eq: {
      Term a = subst_term(n.terms[0], objs), b = subst_term(n.terms[1], objs);
      return n.is_core ? fo::mk_eq(a, b) : fo::Eq(a, b);
    }
    case FoKind::ActEq: {
      ActionTerm a = subst_action(n.lhs, objs, acts), b = subst_action(n.rhs, objs, acts);
      return fo::mk_act_eq(std::move(a), std::move(b));
    }
    case FoKind::Exists:
    case FoKind::Forall:
    case FoKind::Count:
    case FoKind::ExistsAct: {
      const bool obj_binder = n.kind != FoKind::ExistsAct;
      std::map<Symbol, Term> o = objs;
      std::map<Symbol, ActionTerm> a = acts;
      for (Symbol v : n.vars) {
        if (obj_binder) {
          o.erase(v);
        } else {
          a.erase(v);
        }
      }
      Formula body = n.kids[0];
      std::set<Symbol> captured = range_vars(body, o, a);
      std::vector<Symbol> vars = n.vars;
      std::map<Symbol, Term> ren_o;
      std::map<Symbol, ActionTerm> ren_a;
      for (Symbol& v : vars) {
        if (!captured.count(v)) continue;
        Symbol nv = fresh_variable(symbol_name(v));
        if (obj_binder) {
          ren_o[v] = Term::var(nv);
        } else {
          ren_a[v] = ActionTerm::variable(nv);
        }
        v = nv;
      }
      if (!ren_o.empty() || !ren_a.empty()) body = subst_rec(body, ren_o, ren_a);
      body = subst_rec(body, o, a);
      if (n.kind == FoKind::Count) return fo::mk_count(std::move(vars), std::move(body), n.bound);
      return rebuild(n, {std::move(body)}, vars[0]);
    }
    case FoKind::True:
    case FoKind::False:
      return f;
    default: {
      std::vector<Formula> kids;
      for (const Formula& k : n.kids) kids.push_back(subst_rec(k, objs, acts));
      return rebuild(n, std::move(kids));
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<Symbol, Term>& objs, const std::map<Symbol, ActionTerm>& acts) {
  return subst_rec(f, objs, acts);
}

Formula rename_bound(const Formula& f) {
  const FoNode& n = *f;
  switch (n.kind) {
    case FoKind::True:
    case FoKind::False:
    case FoKind::Atom:
    case FoKind::Eq:
    case FoKind::ActEq:
      return f;
    case FoKind::Exists:
    case FoKind::Forall:
    case FoKind::Count:
    case FoKind::ExistsAct: {
      std::vector<Symbol> vars;
      std::map<Symbol, Term> ro;
      std::map<Symbol, ActionTerm> ra;
      for (Symbol v : n.vars) {
        Symbol nv = fresh_variable(symbol_name(v));
        vars.push_back(nv);
        if (n.kind == FoKind::ExistsAct) {
          ra[v] = ActionTerm::variable(nv);
        } else {
          ro[v] = Term::var(nv);
        }
      }
      Formula body = substitute(rename_bound(n.kids[0]), ro, ra);
      if (n.kind == FoKind::Count) return fo::Count(std::move(vars), std::move(body), n.bound);
      if (n.kind == FoKind::Exists) return fo::Exists(vars[0], std::move(body));
      if (n.kind == FoKind::Forall) return fo::Forall(vars[0], std::move(body));
      return fo::ExistsAct(vars[0], std::move(body));
    }
    default: {
      std::vector<Formula> kids;
      for (const Formula& k : n.kids) kids.push_back(rename_bound(k));
      return rebuild(n, std::move(kids));
    }
  }
}

Formula normalize(const Formula& f) {
  const FoNode& n = *f;
  using namespace fo;
  switch (n.kind) {
    case FoKind::True:
    case FoKind::False:
    case FoKind::Atom:
      return f;
    case FoKind::Eq:
      return mk_eq(n.terms[0], n.terms[1]);
    case FoKind::ActEq:
      return mk_act_eq(n.lhs, n.rhs);
    case FoKind::Not:
      return mk_not(normalize(n.kids[0]));
    case FoKind::And: {
      std::vector<Formula> ks;
      for (const Formula& k : n.kids) ks.push_back(normalize(k));
      return mk_and(std::move(ks));
    }
    case FoKind::Or: {
      std::vector<Formula> ks;
      for (const Formula& k : n.kids) ks.push_back(normalize(k));
      return mk_or(std::move(ks));
    }
    case FoKind::Implies:
      return mk_implies(normalize(n.kids[0]), normalize(n.kids[1]));
    case FoKind::Iff:
      return mk_iff(normalize(n.kids[0]), normalize(n.kids[1]));
    case FoKind::Exists:
      return mk_exists(n.vars[0], normalize(n.kids[0]));
    case FoKind::Forall:
      return mk_forall(n.vars[0], normalize(n.kids[0]));
    case FoKind::ExistsAct:
      return ExistsAct(n.vars[0], normalize(n.kids[0]));
    case FoKind::Count:
      return mk_count(n.vars, normalize(n.kids[0]), n.bound);
  }
  return f;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->pred != b->pred || a->terms != b->terms || a->vars != b->vars ||
      a->bound != b->bound || a->kids.size() != b->kids.size())
    return false;
  if (a->kind == FoKind::ActEq && !(a->lhs == b->lhs && a->rhs == b->rhs)) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

Formula rewrite_atoms(const Formula& f, const AtomRewriter& fn) {
  const FoNode& n = *f;
  switch (n.kind) {
    case FoKind::Atom: {
      auto r = fn(n.pred, n.terms);
      return r ? *r : f;
    }
    case FoKind::True:
    case FoKind::False:
    case FoKind::Eq:
    case FoKind::ActEq:
      return f;
    case FoKind::Count:
      return n.is_core ? fo::mk_count(n.vars, rewrite_atoms(n.kids[0], fn), n.bound)
                       : fo::Count(n.vars, rewrite_atoms(n.kids[0], fn), n.bound);
    default: {
      std::vector<Formula> kids;
      for (const Formula& k : n.kids) kids.push_back(rewrite_atoms(k, fn));
      return rebuild(n, std::move(kids), n.vars.empty() ? 0 : n.vars[0]);
    }
  }
}

Formula expand_counts(const Formula& f) {
  const FoNode& n = *f;
  switch (n.kind) {
    case FoKind::True:
    case FoKind::False:
    case FoKind::Atom:
    case FoKind::Eq:
    case FoKind::ActEq:
      return f;
    case FoKind::Count: {
      Formula body = expand_counts(n.kids[0]);
      const std::size_t b = n.bound;
      std::vector<std::vector<Symbol>> copies(b);
      std::vector<Formula> inst(b);
      for (std::size_t i = 0; i < b; ++i) {
        std::map<Symbol, Term> ren;
        for (Symbol v : n.vars) {
          Symbol nv = fresh_variable(symbol_name(v));
          copies[i].push_back(nv);
          ren[v] = Term::var(nv);
        }
        inst[i] = substitute(rename_bound(body), ren);
      }
      // exists x1. (p(x1) & exists x2. (p(x2) & x2 != x1 & ... ))
      Formula inner = fo::True();
      for (std::size_t i = b; i-- > 0;) {
        std::vector<Formula> conj{inst[i]};
        for (std::size_t j = 0; j < i; ++j) {
          std::vector<Formula> diff;
          for (std::size_t k = 0; k < n.vars.size(); ++k)
            diff.push_back(fo::mk_neq(Term::var(copies[i][k]), Term::var(copies[j][k])));
          conj.push_back(fo::mk_or(std::move(diff)));
        }
        conj.push_back(inner);
        inner = fo::mk_exists(copies[i], fo::mk_and(std::move(conj)));
      }
      return fo::mk_not(inner);
    }
    default: {
      std::vector<Formula> kids;
      for (const Formula& k : n.kids) kids.push_back(expand_counts(k));
      return rebuild(n, std::move(kids), n.vars.empty() ? 0 : n.vars[0]);
    }
  }
}

namespace {
void collect(const Formula& f, std::set<Symbol>* fluents, std::set<Symbol>* consts) {
  const FoNode& n = *f;
  if (n.kind == FoKind::Atom && fluents) fluents->insert(n.pred);
  if (consts) {
    for (const Term& t : n.terms) {
      if (t.is_const()) consts->insert(t.name);
    }
    if (n.kind == FoKind::ActEq) {
      for (const ActionTerm* a : {&n.lhs, &n.rhs}) {
        for (const Term& t : a->args) {
          if (t.is_const()) consts->insert(t.name);
        }
      }
    }
  }
  for (const Formula& k : n.kids) collect(k, fluents, consts);
}
}  // namespace

std::vector<Symbol> mentioned_fluents(const Formula& f) {
  std::set<Symbol> s;
  collect(f, &s, nullptr);
  return {s.begin(), s.end()};
}

std::vector<Symbol> mentioned_constants(const Formula& f) {
  std::set<Symbol> s;
  collect(f, nullptr, &s);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) { return symbol_name(t.name); }

std::string to_string(const ActionTerm& a) {
  if (a.is_var) return symbol_name(a.var);
  std::string s = symbol_name(a.type) + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ", ";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

namespace {

// Precedences: 0 = extends to the right (quantifier-like), 1 iff, 2 implies, 3 or,
// 4 and, 5 not, 6 atomic.
struct Printed {
  std::string text;
  int prec;
};

Printed print(const Formula& f);

std::string wrap(const Printed& p, bool paren) { return paren ? "(" + p.text + ")" : p.text; }

Printed print_nary(const std::vector<Formula>& kids, const char* op, int prec) {
  std::string s;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    Printed k = print(kids[i]);
    if (i) s += std::string(" ") + op + " ";
    s += wrap(k, k.prec <= prec);
  }
  return {s, prec};
}

std::string var_list(const std::vector<Symbol>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += symbol_name(vs[i]);
  }
  return s;
}

Printed print_not(const Formula& body) {
  Printed k = print(body);
  if (k.prec == 0) return {"not " + k.text, 0};
  return {"not " + wrap(k, k.prec < 5), 5};
}

Printed print(const Formula& f) {
  const FoNode& n = *f;
  switch (n.kind) {
    case FoKind::True:
      return {"true", 6};
    case FoKind::False:
      return {"false", 6};
    case FoKind::Atom: {
      std::string s = symbol_name(n.pred) + "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) s += ", ";
        s += to_string(n.terms[i]);
      }
      return {s + ")", 6};
    }
    case FoKind::Eq:
      return {to_string(n.terms[0]) + " = " + to_string(n.terms[1]), 6};
    case FoKind::ActEq:
      return {to_string(n.lhs) + " = " + to_string(n.rhs), 6};
    case FoKind::Not: {
      const Formula& k = n.kids[0];
      if (k->kind == FoKind::Eq) return {to_string(k->terms[0]) + " != " + to_string(k->terms[1]), 6};
      if (k->kind == FoKind::ActEq) return {to_string(k->lhs) + " != " + to_string(k->rhs), 6};
      if (k->is_core && k->kind == FoKind::Exists && k->kids[0]->kind == FoKind::Not) {
        Printed b = print(k->kids[0]->kids[0]);
        return {"forall " + symbol_name(k->vars[0]) + ". " + b.text, 0};
      }
      if (k->is_core && k->kind == FoKind::And) {
        const auto& ks = k->kids;
        bool all_neg = std::all_of(ks.begin(), ks.end(), [](const Formula& x) { return x->kind == FoKind::Not; });
        if (all_neg) {
          std::vector<Formula> pos;
          for (const Formula& x : ks) pos.push_back(x->kids[0]);
          return print_nary(pos, "|", 3);
        }
        bool last_neg = ks.back()->kind == FoKind::Not &&
                        std::none_of(ks.begin(), ks.end() - 1, [](const Formula& x) { return x->kind == FoKind::Not; });
        if (last_neg) {
          std::vector<Formula> ante(ks.begin(), ks.end() - 1);
          Printed a = ante.size() == 1 ? print(ante[0]) : print_nary(ante, "&", 4);
          Printed c = print(ks.back()->kids[0]);
          return {wrap(a, a.prec <= 2) + " implies " + wrap(c, c.prec < 2), 2};
        }
      }
      return print_not(k);
    }
    case FoKind::And:
      return print_nary(n.kids, "&", 4);
    case FoKind::Or:
      return print_nary(n.kids, "|", 3);
    case FoKind::Implies: {
      Printed a = print(n.kids[0]), c = print(n.kids[1]);
      return {wrap(a, a.prec <= 2) + " implies " + wrap(c, c.prec < 2), 2};
    }
    case FoKind::Iff: {
      Printed a = print(n.kids[0]), c = print(n.kids[1]);
      return {wrap(a, a.prec <= 1) + " iff " + wrap(c, c.prec <= 1), 1};
    }
    case FoKind::Exists:
      return {"exists " + symbol_name(n.vars[0]) + ". " + print(n.kids[0]).text, 0};
    case FoKind::Forall:
      return {"forall " + symbol_name(n.vars[0]) + ". " + print(n.kids[0]).text, 0};
    case FoKind::ExistsAct:
      return {"exists_action " + symbol_name(n.vars[0]) + ". " + print(n.kids[0]).text, 0};
    case FoKind::Count:
      return {"count(" + var_list(n.vars) + " | " + print(n.kids[0]).text + ") < " + std::to_string(n.bound), 6};
  }
  return {"?", 6};
}

}  // namespace

std::string to_string(const Formula& f) { return print(f).text; }

}  // namespace bsc
