#include "bsc/transforms.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "bsc/error.hpp"
#include "bsc/isomorphism.hpp"

namespace bsc {

Theory with_initial(const Theory& t, const Interpretation& init) {
  Theory out = t;
  out.init = CompleteInit{init.relations()};
  return out;
}

// ---------------------------------------------------------------------------
// Blocking

Theory blocking_transform(const Theory& t, std::size_t b) {
  Dynamics dyn(t);
  Theory out = t;
  out.name = t.name + "_blocked";
  out.declared_bound = b;
  const Formula bounded = theory_within_bound(t.fluents, b);
  for (std::size_t a = 0; a < t.actions.size(); ++a) {
    std::vector<Term> args;
    for (Symbol p : t.actions[a].params) args.push_back(Term::var(p));
    Formula post = dyn.regress(bounded, a, args, CountMode::Keep);
    out.actions[a].poss = fo::mk_and(t.actions[a].poss, post);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fading

namespace {

void flatten(const Formula& f, FoKind k, std::vector<Formula>& out) {
  if (f->kind == k) {
    for (const Formula& c : f->kids) flatten(c, k, out);
  } else {
    out.push_back(f);
  }
}

bool is_own_atom(const Formula& f, Symbol fluent, const std::vector<Symbol>& params) {
  if (f->kind != FoKind::Atom || f->pred != fluent || f->terms.size() != params.size()) return false;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (f->terms[k] != Term::var(params[k])) return false;
  }
  return true;
}

struct NormalForm {
  Formula pos;  // γ⁺
  Formula neg;  // γ⁻
};

std::optional<NormalForm> split_normal_form(const SuccessorStateAxiom& ax) {
  std::vector<Formula> disj;
  flatten(ax.body, FoKind::Or, disj);
  std::optional<std::size_t> frame;
  Formula neg = fo::False();
  for (std::size_t k = 0; k < disj.size(); ++k) {
    std::vector<Formula> conj;
    flatten(disj[k], FoKind::And, conj);
    auto own = std::find_if(conj.begin(), conj.end(),
                            [&](const Formula& c) { return is_own_atom(c, ax.fluent, ax.params); });
    if (own == conj.end()) continue;
    if (frame) return std::nullopt;  // two frame disjuncts
    frame = k;
    std::vector<Formula> negs;
    for (auto it = conj.begin(); it != conj.end(); ++it) {
      if (it == own) continue;
      negs.push_back((*it)->kind == FoKind::Not ? (*it)->kids[0] : fo::Not(*it));
    }
    neg = negs.empty() ? fo::False() : negs.size() == 1 ? negs[0] : fo::Or(negs);
  }
  if (!frame) return std::nullopt;
  std::vector<Formula> pos;
  for (std::size_t k = 0; k < disj.size(); ++k) {
    if (k != *frame) pos.push_back(disj[k]);
  }
  return NormalForm{pos.empty() ? fo::False() : pos.size() == 1 ? pos[0] : fo::Or(pos), neg};
}

}  // namespace

std::string faded_name(Symbol fluent, std::size_t i) { return symbol_name(fluent) + "_" + std::to_string(i); }

Theory fading_transform(const Theory& t, std::size_t ell, std::size_t b) {
  std::vector<NormalForm> forms;
  for (const FluentDecl& f : t.fluents) {
    const SuccessorStateAxiom* ax = t.ssa_for(f.name);
    if (!ax) throw Error("missing SSA: " + symbol_name(f.name));
    auto nf = split_normal_form(*ax);
    if (!nf)
      throw Error("SSA for " + symbol_name(f.name) + " is not of the form pos | " + symbol_name(f.name) +
                  "(params) & not neg");
    forms.push_back(*nf);
  }

  std::unordered_map<Symbol, std::vector<Symbol>> layers;
  for (const FluentDecl& f : t.fluents) {
    for (std::size_t i = 0; i <= ell; ++i) {
      Symbol s = intern(faded_name(f.name, i));
      if (t.fluent_index(s) || std::find(t.constants.begin(), t.constants.end(), s) != t.constants.end())
        throw Error("faded fluent name " + symbol_name(s) + " clashes with a declared name");
      layers[f.name].push_back(s);
    }
  }
  // F(t̄) becomes F_0(t̄) | ... | F_ell(t̄).
  auto fade = [&](const Formula& f) {
    return rewrite_atoms(f, [&](Symbol pred, const std::vector<Term>& args) -> std::optional<Formula> {
      auto it = layers.find(pred);
      if (it == layers.end()) return std::nullopt;
      std::vector<Formula> ds;
      for (Symbol s : it->second) ds.push_back(fo::Atom(s, args));
      return fo::Or(ds);
    });
  };

  Theory out;
  out.name = t.name + "_faded";
  out.constants = t.constants;
  out.declared_bound = b;
  for (const FluentDecl& f : t.fluents) {
    for (Symbol s : layers[f.name]) out.fluents.push_back({s, f.arity});
  }
  for (const ActionTypeDecl& a : t.actions) {
    ActionTypeDecl na = a;
    na.poss = fade(a.poss);
    out.actions.push_back(std::move(na));
  }
  for (std::size_t fi = 0; fi < t.fluents.size(); ++fi) {
    const FluentDecl& f = t.fluents[fi];
    const SuccessorStateAxiom& ax = *t.ssa_for(f.name);
    Formula pos = fade(forms[fi].pos);
    Formula neg = fade(forms[fi].neg);
    std::vector<Symbol> zs;
    std::map<Symbol, Term> ren;
    for (Symbol x : ax.params) {
      zs.push_back(fresh_variable(symbol_name(x)));
      ren[x] = Term::var(zs.back());
    }
    Formula fresh_count = fo::Count(zs, substitute(pos, ren), b);
    const std::vector<Symbol>& ls = layers[f.name];
    std::vector<Term> xs;
    for (Symbol x : ax.params) xs.push_back(Term::var(x));
    for (std::size_t i = 0; i <= ell; ++i) {
      SuccessorStateAxiom na;
      na.fluent = ls[i];
      na.params = ax.params;
      na.span = ax.span;
      if (i == ell)
        na.body = fo::And(pos, fresh_count);
      else
        na.body = fo::And({fo::Not(pos), fo::Atom(ls[i + 1], xs), fo::Not(neg)});
      out.ssas.push_back(std::move(na));
    }
  }
  if (const auto* ci = std::get_if<CompleteInit>(&t.init)) {
    CompleteInit ni;
    for (std::size_t fi = 0; fi < t.fluents.size(); ++fi) {
      for (std::size_t i = 0; i <= ell; ++i) ni.relations.push_back(i == ell ? ci->relations[fi] : Relation());
    }
    out.init = std::move(ni);
  } else {
    ConstraintInit ni;
    for (const Formula& c : std::get<ConstraintInit>(t.init).constraints) {
      ni.constraints.push_back(rewrite_atoms(c, [&](Symbol pred, const std::vector<Term>& args) -> std::optional<Formula> {
        auto it = layers.find(pred);
        if (it == layers.end()) return std::nullopt;
        return fo::Atom(it->second.back(), args);
      }));
    }
    for (const FluentDecl& f : t.fluents) {
      for (std::size_t i = 0; i < ell; ++i) {
        std::vector<Symbol> vs;
        std::vector<Term> ts;
        for (std::size_t k = 0; k < f.arity; ++k) {
          vs.push_back(fresh_variable("x"));
          ts.push_back(Term::var(vs.back()));
        }
        Formula at = fo::Atom(layers[f.name][i], ts);
        for (auto it = vs.rbegin(); it != vs.rend(); ++it) at = fo::Exists(*it, at);
        ni.constraints.push_back(fo::Not(at));
      }
    }
    out.init = std::move(ni);
  }
  if (auto ds = validate_theory(out); !ds.empty()) throw Error("faded theory is ill formed: " + ds[0].message);
  return out;
}

// ---------------------------------------------------------------------------
// Boundedness check

Symbol primed(Symbol fluent) { return intern(symbol_name(fluent) + "'"); }

Theory boundedness_check_theory(const Theory& t, std::size_t b) {
  if (!t.has_complete_init()) throw Error("boundedness check needs a complete initial situation");
  if (!state_within_bound(t.initial_interpretation(), b))
    throw BoundViolation("initial situation exceeds bound", {});
  std::unordered_map<Symbol, Symbol> pr;
  for (const FluentDecl& f : t.fluents) pr[f.name] = primed(f.name);
  auto prime = [&](const Formula& f) {
    return rewrite_atoms(f, [&](Symbol pred, const std::vector<Term>& args) -> std::optional<Formula> {
      auto it = pr.find(pred);
      if (it == pr.end()) return std::nullopt;
      return fo::Atom(it->second, args);
    });
  };
  const Formula nob = prime(next_orig_bounded(t, b));

  Theory out;
  out.name = t.name + "_check";
  out.constants = t.constants;
  out.declared_bound = b;
  out.init = t.init;
  for (const FluentDecl& f : t.fluents) out.fluents.push_back({pr[f.name], f.arity});
  for (const ActionTypeDecl& a : t.actions) {
    ActionTypeDecl na = a;
    na.poss = fo::mk_and(prime(a.poss), nob);
    out.actions.push_back(std::move(na));
  }
  for (const SuccessorStateAxiom& ax : t.ssas) {
    SuccessorStateAxiom na = ax;
    na.fluent = pr[ax.fluent];
    na.body = fo::And(prime(ax.body), nob);
    out.ssas.push_back(std::move(na));
  }
  return out;
}

namespace {

// Calls fn for every tuple in dom^k; stops when fn returns true.
bool any_tuple(const std::vector<ObjectId>& dom, std::size_t k, std::vector<ObjectId>& cur,
               const std::function<bool(const std::vector<ObjectId>&)>& fn) {
  if (cur.size() == k) return fn(cur);
  for (ObjectId o : dom) {
    cur.push_back(o);
    bool stop = any_tuple(dom, k, cur, fn);
    cur.pop_back();
    if (stop) return true;
  }
  return false;
}

std::vector<ObjectId> outside(const Interpretation& i, std::size_t n, std::uint32_t& next) {
  std::vector<ObjectId> out;
  while (out.size() < n) {
    ObjectId o = ObjectId::fresh(next++);
    if (!i.in_adom(o)) out.push_back(o);
  }
  return out;
}

}  // namespace

BoundednessVerdict check_bounded(const Theory& t, std::size_t b, const AbstractionConfig& cfg) {
  BoundednessVerdict v;
  const Interpretation init = t.initial_interpretation();
  if (!state_within_bound(init, b)) {
    v.reason = "initial situation exceeds bound";
    return v;
  }
  const Theory dprime = boundedness_check_theory(t, b);
  AbstractionResult abs = build_abstract_ts(dprime, b, cfg);
  v.states = abs.ts.num_states();
  v.transitions = abs.ts.num_transitions();
  v.adom = abs.adom_size;

  // NOB over primed fluents, checked as an invariant of D′.
  std::unordered_map<Symbol, Symbol> pr;
  for (const FluentDecl& f : t.fluents) pr[f.name] = primed(f.name);
  Formula nob_primed = rewrite_atoms(next_orig_bounded(t, b), [&](Symbol pred, const std::vector<Term>& args)
                                                                  -> std::optional<Formula> {
    return fo::Atom(pr.at(pred), args);
  });
  Symbol z = fresh_variable("Z");
  MuFormula ag = mu::Nu(z, mu::And(mu::Fo(nob_primed), mu::Box(mu::Var(z))));
  Verdict ver = check(abs.ts, ag);
  if (ver.holds) {
    v.bounded = true;
    v.reason = "no reachable situation exceeds the bound";
    return v;
  }
  if (ver.path.empty()) throw Error("internal: failed invariant without counterexample path");

  // Replay the abstract path in the original theory, mapping fresh arguments to
  // objects new to the concrete situation.
  Dynamics dyn(t);
  const Signature sig = t.signature();
  auto as_orig = [&](const Interpretation& i) { return Interpretation(i.relations(), i.constants()); };
  Interpretation s = init;
  std::unordered_map<ObjectId, ObjectId> g;
  for (ObjectId o : init.adom()) g[o] = o;
  std::uint32_t next_fresh = 0;
  for (std::size_t k = 0; k + 1 < ver.path.size(); ++k) {
    const std::size_t q = ver.path[k], r = ver.path[k + 1];
    const ActionInstance& aa = abs.edge_action.at({q, r});
    const Interpretation iq = as_orig(abs.ts.label(q));
    std::unordered_map<ObjectId, ObjectId> gext = g;
    ActionInstance ca{aa.type, {}};
    for (ObjectId o : aa.args) {
      if (!gext.count(o)) {
        ObjectId c;
        do {
          c = ObjectId::fresh(next_fresh++);
        } while (s.in_adom(c));
        gext[o] = c;
      }
      ca.args.push_back(gext[o]);
    }
    Evaluator ev(s, sig);
    if (!dyn.poss(ev, ca)) throw Error("internal: replayed action not executable: " + to_string(ca, t));
    Interpretation snext = dyn.apply(ev, ca);
    Evaluator evq(iq, sig);
    Interpretation inext = dyn.apply(evq, aa);
    auto h = find_isomorphism_fixing(inext, as_orig(abs.ts.label(r)), iq.adom());
    if (!h) throw Error("internal: abstract edge does not match its action");
    IsoMap hinv = h->inverse();
    std::unordered_map<ObjectId, ObjectId> gnext;
    for (ObjectId o : abs.ts.label(r).adom()) gnext[o] = gext.at(*hinv.at(o));
    v.counter_prefix.push_back(ca);
    v.counter_labels.push_back(to_string(ca, t));
    s = std::move(snext);
    g = std::move(gnext);
  }

  // Some executable action now leads out of the bound.
  std::uint32_t scratch = next_fresh;
  std::vector<ObjectId> dom = s.adom();
  std::vector<ObjectId> extra = outside(s, t.max_action_arity(), scratch);
  dom.insert(dom.end(), extra.begin(), extra.end());
  Evaluator ev(s, sig);
  bool found = false;
  for (std::size_t a = 0; a < t.actions.size() && !found; ++a) {
    std::vector<ObjectId> cur;
    found = any_tuple(dom, t.actions[a].params.size(), cur, [&](const std::vector<ObjectId>& args) {
      ActionInstance ca{a, args};
      if (!dyn.poss(ev, ca)) return false;
      bool over;
      try {
        over = !state_within_bound(dyn.apply(ev, ca), b);
      } catch (const UnboundedEffect&) {
        over = true;
      }
      if (!over) return false;
      v.counter_prefix.push_back(ca);
      v.counter_labels.push_back(to_string(ca, t));
      return true;
    });
  }
  if (!found) throw Error("internal: no violating action at the end of the counterexample");
  v.reason = "bound exceeded after " + v.counter_labels.back();
  return v;
}

// ---------------------------------------------------------------------------
// Initial model enumeration

namespace {

enum class K3 : std::uint8_t { F, T, U };

struct Canon {
  std::vector<ObjectId> objects;  // sorted
  std::vector<ObjectId> constants;
  std::vector<std::vector<Tuple>> cands;  // per fluent, lexicographic
};

Canon canonical(const Theory& t, std::size_t b) {
  Canon c;
  c.constants = t.constant_objects();
  AdomBounds ab = adom_bounds(t, b);
  c.objects = c.constants;
  std::sort(c.objects.begin(), c.objects.end());
  c.objects.erase(std::unique(c.objects.begin(), c.objects.end()), c.objects.end());
  for (std::uint32_t k = 0; c.objects.size() < ab.bprime; ++k) c.objects.push_back(ObjectId::fresh(k));
  std::sort(c.objects.begin(), c.objects.end());
  for (const FluentDecl& f : t.fluents) {
    std::vector<Tuple> ts;
    std::vector<ObjectId> cur;
    any_tuple(c.objects, f.arity, cur, [&](const std::vector<ObjectId>& xs) {
      ts.push_back(Tuple(xs));
      return false;
    });
    c.cands.push_back(std::move(ts));
  }
  return c;
}

// Kleene evaluation of constraints over a partially decided interpretation.
class Partial {
 public:
  Partial(const Theory& t, const Canon& c, std::size_t b) : c_(c), b_(b), in_(t.fluents.size()), cnt_(t.fluents.size(), 0) {
    std::size_t off = 0;
    for (std::size_t f = 0; f < t.fluents.size(); ++f) {
      fluent_pos_[t.fluents[f].name] = f;
      offset_.push_back(off);
      off += c.cands[f].size();
    }
    for (std::size_t k = 0; k < c.objects.size(); ++k) obj_pos_[c.objects[k]] = k;
  }

  void set_decided(std::size_t k) { decided_ = k; }
  void add(std::size_t f, const Tuple& t) {
    in_[f].insert(t);
    ++cnt_[f];
  }
  void remove(std::size_t f, const Tuple& t) {
    in_[f].erase(t);
    --cnt_[f];
  }
  std::size_t count(std::size_t f) const { return cnt_[f]; }
  const std::set<Tuple>& chosen(std::size_t f) const { return in_[f]; }

  K3 eval(const FoNode& n) {
    switch (n.kind) {
      case FoKind::True:
        return K3::T;
      case FoKind::False:
        return K3::F;
      case FoKind::Atom:
        return atom(n);
      case FoKind::Eq:
        return value(n.terms[0]) == value(n.terms[1]) ? K3::T : K3::F;
      case FoKind::Not: {
        K3 r = eval(*n.kids[0]);
        return r == K3::U ? K3::U : (r == K3::T ? K3::F : K3::T);
      }
      case FoKind::And: {
        K3 r = K3::T;
        for (const Formula& k : n.kids) {
          K3 x = eval(*k);
          if (x == K3::F) return K3::F;
          if (x == K3::U) r = K3::U;
        }
        return r;
      }
      case FoKind::Exists: {
        K3 r = K3::F;
        for (ObjectId d : domain()) {
          env_.emplace_back(n.vars[0], d);
          K3 x = eval(*n.kids[0]);
          env_.pop_back();
          if (x == K3::T) return K3::T;
          if (x == K3::U) r = K3::U;
        }
        return r;
      }
      case FoKind::Count: {
        std::size_t lo = 0, hi = 0;
        bool pad_possible = false, pad_true = false;
        count_rec(n, 0, false, lo, hi, pad_possible, pad_true);
        if (pad_true || lo >= n.bound) return K3::F;
        if (!pad_possible && hi < n.bound) return K3::T;
        return K3::U;
      }
      default:
        throw Error("unexpected formula kind in an initial constraint");
    }
  }

 private:
  ObjectId value(const Term& t) const {
    if (t.is_const()) return ObjectId::named(t.name);
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    throw Error("unbound variable " + symbol_name(t.name) + " in an initial constraint");
  }

  // Canonical objects, padding objects in use, and one more padding object.
  std::vector<ObjectId> domain() const {
    std::vector<ObjectId> d = c_.objects;
    std::uint32_t next = 0;
    std::set<ObjectId> pads;
    for (const auto& [s, o] : env_) {
      if (is_padding(o)) pads.insert(o);
    }
    for (ObjectId p : pads) {
      d.push_back(p);
      next = std::max(next, p.fresh_index() - kPaddingBase + 1);
    }
    d.push_back(padding_object(next));
    return d;
  }

  void count_rec(const FoNode& n, std::size_t j, bool uses_pad, std::size_t& lo, std::size_t& hi, bool& pad_possible,
                 bool& pad_true) {
    if (pad_true) return;
    if (j == n.vars.size()) {
      K3 x = eval(*n.kids[0]);
      if (uses_pad) {
        if (x == K3::T) pad_true = true;
        if (x == K3::U) pad_possible = true;
      } else {
        if (x == K3::T) ++lo;
        if (x != K3::F) ++hi;
      }
      return;
    }
    for (ObjectId d : domain()) {
      env_.emplace_back(n.vars[j], d);
      count_rec(n, j + 1, uses_pad || is_padding(d), lo, hi, pad_possible, pad_true);
      env_.pop_back();
    }
  }

  K3 atom(const FoNode& n) {
    auto fit = fluent_pos_.find(n.pred);
    if (fit == fluent_pos_.end()) throw Error("unknown fluent " + symbol_name(n.pred));
    const std::size_t f = fit->second;
    Tuple t;
    std::size_t idx = 0;
    const std::size_t m = c_.objects.size();
    for (const Term& x : n.terms) {
      ObjectId o = value(x);
      auto p = obj_pos_.find(o);
      if (p == obj_pos_.end()) return K3::F;  // padding is never in a relation
      t.push_back(o);
      idx = idx * m + p->second;
    }
    if (in_[f].count(t)) return K3::T;
    if (offset_[f] + idx < decided_) return K3::F;
    if (cnt_[f] >= b_) return K3::F;
    return K3::U;
  }

  const Canon& c_;
  std::size_t b_;
  std::unordered_map<Symbol, std::size_t> fluent_pos_;
  std::unordered_map<ObjectId, std::size_t> obj_pos_;
  std::vector<std::size_t> offset_;
  std::vector<std::set<Tuple>> in_;
  std::vector<std::size_t> cnt_;
  std::size_t decided_ = 0;
  std::vector<std::pair<Symbol, ObjectId>> env_;
};

bool satisfies_all(const Interpretation& i, const Signature& sig, const std::vector<Formula>& cs) {
  Evaluator ev(i, sig);
  return std::all_of(cs.begin(), cs.end(), [&](const Formula& c) { return ev.eval(c); });
}

// Anonymous objects in use are exactly #0..#m-1.
bool fresh_prefix(const Interpretation& i) {
  std::uint32_t m = 0;
  std::vector<std::uint32_t> used;
  for (ObjectId o : i.adom()) {
    if (o.is_fresh()) used.push_back(o.fresh_index());
  }
  for (std::uint32_t u : used) {
    if (u != m++) return false;
  }
  return true;
}

class Quotient {
 public:
  void add(const Interpretation& i) {
    auto& bucket = buckets_[iso_invariant(i)];
    for (std::size_t k : bucket) {
      if (find_isomorphism(reps_[k], i)) return;
    }
    bucket.push_back(reps_.size());
    reps_.push_back(i);
  }
  std::vector<Interpretation> take() { return std::move(reps_); }

 private:
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
  std::vector<Interpretation> reps_;
};

const std::vector<Formula>& init_constraints(const Theory& t) {
  if (t.has_complete_init()) throw Error("theory has a complete initial situation");
  return std::get<ConstraintInit>(t.init).constraints;
}

}  // namespace

InitEnumeration enumerate_initial_models(const Theory& t, std::size_t b, std::size_t guard) {
  const std::vector<Formula>& raw = init_constraints(t);
  std::vector<Formula> cs;
  for (const Formula& c : raw) cs.push_back(normalize(c));
  const Signature sig = t.signature();
  Canon canon = canonical(t, b);
  InitEnumeration res;
  res.objects = canon.objects.size();

  std::vector<std::pair<std::size_t, const Tuple*>> decisions;
  for (std::size_t f = 0; f < t.fluents.size(); ++f) {
    for (const Tuple& tp : canon.cands[f]) decisions.emplace_back(f, &tp);
  }
  Partial part(t, canon, b);
  Quotient quot;
  const std::size_t node_guard = guard * 100;
  std::size_t nodes = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (res.truncated) return;
    if (++nodes > node_guard) {
      res.truncated = true;
      return;
    }
    part.set_decided(k);
    for (const Formula& c : cs) {
      if (part.eval(*c) == K3::F) return;
    }
    if (k == decisions.size()) {
      if (++res.candidates > guard) {
        res.truncated = true;
        return;
      }
      std::vector<Relation> rels;
      for (std::size_t f = 0; f < t.fluents.size(); ++f) {
        rels.emplace_back(std::vector<Tuple>(part.chosen(f).begin(), part.chosen(f).end()));
      }
      Interpretation i(std::move(rels), canon.constants);
      if (fresh_prefix(i) && satisfies_all(i, sig, cs)) quot.add(i);
      return;
    }
    const auto [f, tp] = decisions[k];
    if (part.count(f) < b) {
      part.add(f, *tp);
      dfs(k + 1);
      part.remove(f, *tp);
    }
    dfs(k + 1);
  };
  dfs(0);
  res.interpretations = quot.take();
  return res;
}

InitEnumeration enumerate_initial_models_brute(const Theory& t, std::size_t b, std::size_t guard) {
  const std::vector<Formula>& cs = init_constraints(t);
  const Signature sig = t.signature();
  Canon canon = canonical(t, b);
  InitEnumeration res;
  res.objects = canon.objects.size();

  // All subsets of at most b tuples, per fluent.
  std::vector<std::vector<Relation>> options(t.fluents.size());
  for (std::size_t f = 0; f < t.fluents.size(); ++f) {
    std::vector<Tuple> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      options[f].emplace_back(cur);
      if (cur.size() == b) return;
      for (std::size_t k = from; k < canon.cands[f].size(); ++k) {
        cur.push_back(canon.cands[f][k]);
        rec(k + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  Quotient quot;
  std::vector<Relation> rels(t.fluents.size());
  std::function<void(std::size_t)> rec = [&](std::size_t f) {
    if (res.truncated) return;
    if (f == t.fluents.size()) {
      if (++res.candidates > guard) {
        res.truncated = true;
        return;
      }
      Interpretation i(rels, canon.constants);
      if (satisfies_all(i, sig, cs)) quot.add(i);
      return;
    }
    for (const Relation& r : options[f]) {
      rels[f] = r;
      rec(f + 1);
    }
  };
  rec(0);
  res.interpretations = quot.take();
  return res;
}

IncompleteVerdict verify_incomplete(const Theory& t, const MuFormula& f, std::size_t b,
                                    const AbstractionConfig& cfg, std::size_t guard) {
  IncompleteVerdict v;
  v.cells = enumerate_initial_models(t, b, guard);
  if (v.cells.truncated)
    throw Error("initial model enumeration truncated after " + std::to_string(guard) + " candidates");
  v.holds = true;
  for (std::size_t k = 0; k < v.cells.interpretations.size(); ++k) {
    AbstractionResult abs = build_abstract_ts(t, v.cells.interpretations[k], b, cfg);
    bool ok = check(abs.ts, f).holds;
    v.cell_holds.push_back(ok);
    if (!ok && v.holds) {
      v.holds = false;
      v.failing_cell = k;
    }
  }
  return v;
}

}  // namespace bsc
