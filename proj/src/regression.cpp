#include "bsc/regression.hpp"

#include <algorithm>

#include "bsc/error.hpp"

namespace bsc {

std::string to_string(const ActionInstance& a, const Theory& t) {
  std::string s = symbol_name(t.actions.at(a.type).name) + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? "," : "") + a.args[i].str();
  return s + ")";
}

Dynamics::Dynamics(const Theory& t) : t_(std::make_shared<const Theory>(t)), sig_(t.signature()) {
  const Theory& th = *t_;
  for (const FluentDecl& f : th.fluents) {
    const SuccessorStateAxiom* ax = th.ssa_for(f.name);
    if (!ax) throw Error("missing SSA: " + symbol_name(f.name));
    fl_params_.push_back(ax->params);
  }
  for (const ActionTypeDecl& a : th.actions) {
    std::vector<Symbol> ys;
    std::map<Symbol, Term> ren;
    std::vector<Term> args;
    for (Symbol p : a.params) {
      ys.push_back(fresh_variable(symbol_name(p)));
      ren[p] = Term::var(ys.back());
      args.push_back(Term::var(ys.back()));
    }
    act_params_.push_back(ys);
    poss_.push_back(suppress_actions(substitute(a.poss, ren), th));
    std::vector<Formula> effs;
    std::vector<bool> frames;
    for (std::size_t f = 0; f < th.fluents.size(); ++f) {
      const SuccessorStateAxiom* ax = th.ssa_for(th.fluents[f].name);
      Formula body = rename_bound(ax->body);
      body = substitute(body, {}, {{act_symbol(), ActionTerm::apply(a.name, args)}});
      body = suppress_actions(body, th);
      std::vector<Term> xs;
      for (Symbol x : ax->params) xs.push_back(Term::var(x));
      frames.push_back(equal(body, fo::Atom(th.fluents[f].name, xs)));
      effs.push_back(std::move(body));
    }
    eff_.push_back(std::move(effs));
    frame_.push_back(std::move(frames));
  }
}

bool Dynamics::poss(Evaluator& ev, const ActionInstance& a) const {
  const std::vector<Symbol>& ys = act_params_.at(a.type);
  if (ys.size() != a.args.size())
    throw Error("arity mismatch: " + symbol_name(t_->actions[a.type].name) + " takes " + std::to_string(ys.size()) +
                " arguments");
  Valuation v;
  for (std::size_t k = 0; k < ys.size(); ++k) v[ys[k]] = a.args[k];
  return ev.eval(poss_[a.type], v);
}

Interpretation Dynamics::apply(Evaluator& ev, const ActionInstance& a) const {
  const std::vector<Symbol>& ys = act_params_.at(a.type);
  if (ys.size() != a.args.size()) throw Error("arity mismatch: " + symbol_name(t_->actions[a.type].name));
  Valuation fixed;
  for (std::size_t k = 0; k < ys.size(); ++k) fixed[ys[k]] = a.args[k];
  const Interpretation& cur = ev.interpretation();
  std::vector<Relation> rels;
  for (std::size_t f = 0; f < t_->fluents.size(); ++f) {
    if (frame_[a.type][f]) {
      rels.push_back(cur.relation(f));
      continue;
    }
    Answer ans = ev.answer(eff_[a.type][f], fl_params_[f], fixed);
    if (ans.infinite)
      throw UnboundedEffect("unbounded effect: " + to_string(a, *t_) + " makes " + symbol_name(t_->fluents[f].name) +
                            " infinite");
    rels.push_back(std::move(ans.tuples));
  }
  return Interpretation(std::move(rels), cur.constants());
}

Formula Dynamics::regress(const Formula& phi, std::size_t a, const std::vector<Term>& args, CountMode mode) const {
  const std::vector<Symbol>& ys = act_params_.at(a);
  if (ys.size() != args.size()) throw Error("arity mismatch: " + symbol_name(t_->actions[a].name));
  Formula src = mode == CountMode::Expand ? expand_counts(phi) : phi;
  Formula out = rewrite_atoms(src, [&](Symbol pred, const std::vector<Term>& ts) -> std::optional<Formula> {
    auto f = sig_.fluent_index(pred);
    if (!f) throw Error("unknown fluent " + symbol_name(pred));
    std::map<Symbol, Term> sub;
    for (std::size_t k = 0; k < ts.size(); ++k) sub[fl_params_[*f][k]] = ts[k];
    for (std::size_t k = 0; k < ys.size(); ++k) sub[ys[k]] = args[k];
    return substitute(eff_[a][*f], sub);
  });
  return normalize(out);
}

bool poss(const Interpretation& i, const ActionInstance& a, const Theory& t) {
  Dynamics d(t);
  Evaluator ev(i, d.signature());
  return d.poss(ev, a);
}

Interpretation apply_ssa(const Interpretation& i, const ActionInstance& a, const Theory& t) {
  Dynamics d(t);
  Evaluator ev(i, d.signature());
  return d.apply(ev, a);
}

Formula regress_one_step(const Formula& phi, std::size_t action, const std::vector<Term>& args, const Theory& t,
                         CountMode mode) {
  return Dynamics(t).regress(phi, action, args, mode);
}

Formula bounded_formula(const FluentDecl& f, std::size_t b) {
  std::vector<Symbol> xs;
  std::vector<Term> ts;
  for (std::size_t k = 0; k < f.arity; ++k) {
    xs.push_back(fresh_variable("x"));
    ts.push_back(Term::var(xs.back()));
  }
  return fo::Count(xs, fo::Atom(f.name, ts), b);
}

Formula within_bound(const FluentDecl& f, std::size_t b) { return bounded_formula(f, b + 1); }

Formula theory_within_bound(const std::vector<FluentDecl>& fluents, std::size_t b) {
  std::vector<Formula> cs;
  for (const FluentDecl& f : fluents) cs.push_back(within_bound(f, b));
  return fo::mk_and(std::move(cs));
}

bool state_within_bound(const Interpretation& i, std::size_t b) {
  return std::all_of(i.relations().begin(), i.relations().end(), [&](const Relation& r) { return r.size() <= b; });
}

Formula next_orig_bounded(const Theory& t, std::size_t b) {
  Dynamics d(t);
  Formula bounded = theory_within_bound(t.fluents, b);
  std::vector<Formula> cs;
  for (std::size_t a = 0; a < t.actions.size(); ++a) {
    const std::vector<Symbol>& ys = d.action_params(a);
    std::vector<Symbol> zs;
    std::map<Symbol, Term> ren;
    std::vector<Term> args;
    for (Symbol y : ys) {
      zs.push_back(fresh_variable(symbol_name(y)));
      ren[y] = Term::var(zs.back());
      args.push_back(Term::var(zs.back()));
    }
    Formula pre = substitute(d.poss_body(a), ren);
    Formula post = d.regress(bounded, a, args, CountMode::Keep);
    cs.push_back(fo::mk_forall(zs, fo::mk_implies(pre, post)));
  }
  return normalize(fo::mk_and(std::move(cs)));
}

}  // namespace bsc
