// Situation-suppressed first-order formulas.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsc/symbol.hpp"

namespace bsc {

struct Term {
  enum class Kind : std::uint8_t { Var, Const };
  Kind kind = Kind::Var;
  Symbol name = 0;

  static Term var(Symbol s) { return {Kind::Var, s}; }
  static Term var(std::string_view s) { return {Kind::Var, intern(s)}; }
  static Term constant(Symbol s) { return {Kind::Const, s}; }
  static Term constant(std::string_view s) { return {Kind::Const, intern(s)}; }
  bool is_var() const { return kind == Kind::Var; }
  bool is_const() const { return kind == Kind::Const; }

  friend bool operator==(const Term& a, const Term& b) { return a.kind == b.kind && a.name == b.name; }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.name < b.name;
  }
};

// Either an action variable (`act`, or one bound by ExistsAct) or A(t1..tn).
struct ActionTerm {
  bool is_var = true;
  Symbol var = 0;
  Symbol type = 0;
  std::vector<Term> args;

  static ActionTerm variable(Symbol v) { return {true, v, 0, {}}; }
  static ActionTerm apply(Symbol type, std::vector<Term> args) { return {false, 0, type, std::move(args)}; }
  friend bool operator==(const ActionTerm& a, const ActionTerm& b) {
    return a.is_var == b.is_var && (a.is_var ? a.var == b.var : (a.type == b.type && a.args == b.args));
  }
};

// The reserved SSA action variable.
Symbol act_symbol();

enum class FoKind : std::uint8_t {
  True,
  False,
  Atom,       // pred(terms)
  Eq,         // terms[0] = terms[1]
  ActEq,      // lhs = rhs over the action sort
  Not,
  And,        // n-ary
  Or,         // n-ary (surface)
  Implies,    // surface
  Iff,        // surface
  Exists,     // vars[0]
  Forall,     // vars[0] (surface)
  ExistsAct,  // vars[0] ranges over actions
  Count,      // Count(vars | kids[0]) < bound
};

struct FoNode;
using Formula = std::shared_ptr<const FoNode>;

struct FoNode {
  FoKind kind = FoKind::True;
  Symbol pred = 0;
  std::vector<Term> terms;
  ActionTerm lhs, rhs;
  std::vector<Formula> kids;
  std::vector<Symbol> vars;
  std::size_t bound = 0;

  // Derived, filled by the constructors below.
  std::vector<Symbol> free_vars;      // sorted object variables
  std::vector<Symbol> free_act_vars;  // sorted action variables
  std::size_t quantifiers = 0;        // object quantifiers incl. Count variables
  bool has_action_terms = false;
  bool is_core = true;  // only core kinds below this node

  const Formula& kid(std::size_t i = 0) const { return kids[i]; }
};

// Raw constructors keep the surface shape (used by the parser and printer round trip).
namespace fo {
Formula True();
Formula False();
Formula Atom(Symbol pred, std::vector<Term> args);
Formula Eq(Term a, Term b);
Formula ActEq(ActionTerm a, ActionTerm b);
Formula Not(Formula f);
Formula And(std::vector<Formula> fs);
Formula And(Formula a, Formula b);
Formula Or(std::vector<Formula> fs);
Formula Or(Formula a, Formula b);
Formula Implies(Formula a, Formula b);
Formula Iff(Formula a, Formula b);
Formula Exists(Symbol v, Formula f);
Formula Forall(Symbol v, Formula f);
Formula ExistsAct(Symbol v, Formula f);
Formula Count(std::vector<Symbol> vars, Formula f, std::size_t bound);

// Simplifying constructors producing core kinds only; fold true/false and
// trivially decided equalities (distinct constants are distinct objects).
Formula mk_not(Formula f);
Formula mk_and(std::vector<Formula> fs);
Formula mk_and(Formula a, Formula b);
Formula mk_or(std::vector<Formula> fs);
Formula mk_or(Formula a, Formula b);
Formula mk_implies(Formula a, Formula b);
Formula mk_iff(Formula a, Formula b);
Formula mk_eq(Term a, Term b);
Formula mk_neq(Term a, Term b);
// A(s) = B(t) with both sides applied decides to false or component equalities.
Formula mk_act_eq(ActionTerm a, ActionTerm b);
Formula mk_exists(Symbol v, Formula f);
Formula mk_exists(const std::vector<Symbol>& vs, Formula f);
Formula mk_forall(Symbol v, Formula f);
Formula mk_forall(const std::vector<Symbol>& vs, Formula f);
Formula mk_count(std::vector<Symbol> vars, Formula f, std::size_t bound);
}  // namespace fo

// Rewrites Or/Implies/Iff/Forall to Not/And/Exists with constant folding.
Formula normalize(const Formula& f);

// Structural equality.
bool equal(const Formula& a, const Formula& b);

// Capture-avoiding substitution of free object variables and free action variables.
// Bound variables that would capture are renamed to fresh variables.
Formula substitute(const Formula& f, const std::map<Symbol, Term>& objs,
                   const std::map<Symbol, ActionTerm>& acts = {});

// Renames every bound variable to a fresh one.
Formula rename_bound(const Formula& f);

// Replaces atoms for which `fn` returns a formula; the replacement is inserted as is,
// so callers must make it capture-free (e.g. via substitute on a renamed body).
using AtomRewriter = std::function<std::optional<Formula>(Symbol pred, const std::vector<Term>& args)>;
Formula rewrite_atoms(const Formula& f, const AtomRewriter& fn);

// Expands every Count node into its quantified encoding:
// Count(x|p) < b  ==  not exists x1..xb. p(x1) & ... & p(xb) & pairwise distinct.
Formula expand_counts(const Formula& f);

// Fluent symbols mentioned by atoms.
std::vector<Symbol> mentioned_fluents(const Formula& f);

// Constant symbols mentioned in terms.
std::vector<Symbol> mentioned_constants(const Formula& f);

std::string to_string(const Term& t);
std::string to_string(const ActionTerm& t);
std::string to_string(const Formula& f);

}  // namespace bsc
