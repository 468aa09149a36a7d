#include "bsc/fo_eval.hpp"

#include <algorithm>
#include <set>

#include "bsc/error.hpp"

namespace bsc {

Evaluator::Evaluator(const Interpretation& i, const Signature& sig, EvalOptions opt)
    : i_(i), sig_(sig), opt_(opt) {
  for (std::size_t k = 0; k < sig.fluents().size(); ++k) fluent_pos_[sig.fluents()[k].name] = k;
  for (std::size_t k = 0; k < sig.constants().size() && k < i.constants().size(); ++k)
    const_val_[sig.constants()[k]] = i.constant(k);
}

std::size_t Evaluator::fluent(Symbol s) const {
  auto it = fluent_pos_.find(s);
  if (it == fluent_pos_.end()) throw Error("unknown fluent " + symbol_name(s));
  return it->second;
}

std::optional<ObjectId> Evaluator::lookup(Symbol v) const {
  for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
    if (it->first == v) return it->second;
  }
  return std::nullopt;
}

ObjectId Evaluator::value(const Term& t) const {
  if (t.is_const()) {
    auto it = const_val_.find(t.name);
    if (it == const_val_.end()) throw Error("unknown constant " + symbol_name(t.name));
    return it->second;
  }
  auto v = lookup(t.name);
  if (!v) throw Error("unbound variable " + symbol_name(t.name));
  return *v;
}

std::vector<ObjectId> Evaluator::free_values(const FoNode& n) const {
  std::vector<ObjectId> out;
  for (Symbol v : n.free_vars) {
    auto o = lookup(v);
    if (!o) throw Error("unbound variable " + symbol_name(v));
    out.push_back(*o);
  }
  return out;
}

std::vector<ObjectId> Evaluator::unused_padding(const std::vector<ObjectId>& taken, std::size_t k) const {
  std::vector<ObjectId> out;
  for (std::uint32_t j = 0; out.size() < k; ++j) {
    ObjectId p = padding_object(j);
    if (std::find(taken.begin(), taken.end(), p) == taken.end()) out.push_back(p);
  }
  return out;
}

// adom(I), the values of the node's free variables, and one padding object that is
// none of them. Any two objects outside adom(I) and those values are interchangeable
// for the node, so one representative is enough.
std::vector<ObjectId> Evaluator::quant_domain(const FoNode& n) const {
  if (opt_.padding_size) return naive_domain_;
  std::vector<ObjectId> vals = free_values(n);
  std::vector<ObjectId> dom = i_.adom();
  for (ObjectId o : vals) {
    if (!i_.in_adom(o) && std::find(dom.begin(), dom.end(), o) == dom.end()) dom.push_back(o);
  }
  dom.push_back(unused_padding(vals, 1)[0]);
  return dom;
}

// A positive atom conjunct of `body` mentioning every variable in `vars`.
const FoNode* Evaluator::generator_atom(const FoNode& body, const std::vector<Symbol>& vars) const {
  auto covers = [&](const FoNode& a) {
    if (a.kind != FoKind::Atom) return false;
    for (Symbol v : vars) {
      if (!std::binary_search(a.free_vars.begin(), a.free_vars.end(), v)) return false;
    }
    return true;
  };
  if (covers(body)) return &body;
  if (body.kind == FoKind::And) {
    for (const Formula& k : body.kids) {
      if (covers(*k)) return k.get();
    }
  }
  return nullptr;
}

// Values for `vars` read off the tuples of the atom's relation that agree with the
// atom's other (already bound) arguments.
std::vector<Tuple> Evaluator::generate(const FoNode& atom, const std::vector<Symbol>& vars) const {
  const Relation& rel = i_.relation(fluent(atom.pred));
  const std::size_t w = atom.terms.size();
  std::array<int, kMaxArity> slot{};
  std::array<ObjectId, kMaxArity> fixed{};
  for (std::size_t p = 0; p < w; ++p) {
    const Term& t = atom.terms[p];
    slot[p] = -1;
    if (t.is_var()) {
      auto it = std::find(vars.begin(), vars.end(), t.name);
      if (it != vars.end()) {
        slot[p] = static_cast<int>(it - vars.begin());
        continue;
      }
    }
    fixed[p] = value(t);
  }
  std::vector<Tuple> out;
  for (const Tuple& tp : rel) {
    Tuple cand;
    cand.resize(vars.size());
    std::array<bool, kMaxArity> set{};
    bool ok = true;
    for (std::size_t p = 0; p < w && ok; ++p) {
      if (slot[p] < 0) {
        ok = tp[p] == fixed[p];
      } else if (set[slot[p]]) {
        ok = cand[slot[p]] == tp[p];
      } else {
        cand[slot[p]] = tp[p];
        set[slot[p]] = true;
      }
    }
    if (ok) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Evaluator::ev(const FoNode& n) {
  switch (n.kind) {
    case FoKind::True:
      return true;
    case FoKind::False:
      return false;
    case FoKind::Atom: {
      Tuple t;
      for (const Term& x : n.terms) t.push_back(value(x));
      return i_.relation(fluent(n.pred)).contains(t);
    }
    case FoKind::Eq:
      return value(n.terms[0]) == value(n.terms[1]);
    case FoKind::Not:
      return !ev(*n.kids[0]);
    case FoKind::And:
      for (const Formula& k : n.kids) {
        if (!ev(*k)) return false;
      }
      return true;
    case FoKind::Exists:
    case FoKind::Count: {
      const bool memo = n.free_vars.size() <= 4;
      Key key{&n, {}, 0};
      if (memo) {
        for (Symbol v : n.free_vars) {
          auto o = lookup(v);
          if (!o) throw Error("unbound variable " + symbol_name(v));
          key.vals[key.n++] = *o;
        }
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
      }
      bool r = n.kind == FoKind::Exists ? ev_exists(n) : ev_count(n);
      if (memo) memo_.emplace(key, r);
      return r;
    }
    case FoKind::ActEq:
    case FoKind::ExistsAct:
      throw Error("action terms must be suppressed before evaluation");
    default:
      throw Error("formula is not normalized");
  }
}

bool Evaluator::ev_exists(const FoNode& n) {
  const Symbol x = n.vars[0];
  const FoNode& body = *n.kids[0];
  if (const FoNode* g = generator_atom(body, {x})) {
    for (const Tuple& t : generate(*g, {x})) {
      env_.emplace_back(x, t[0]);
      bool r = ev(body);
      env_.pop_back();
      if (r) return true;
    }
    return false;
  }
  for (ObjectId d : quant_domain(n)) {
    env_.emplace_back(x, d);
    bool r = ev(body);
    env_.pop_back();
    if (r) return true;
  }
  return false;
}

// Count(x̄ | φ) < b. A satisfying tuple using an object outside adom(I) and the
// node's free values has infinitely many isomorphic copies, so the count is infinite.
bool Evaluator::ev_count(const FoNode& n) {
  const std::size_t b = n.bound;
  if (b == 0) return false;
  const FoNode& body = *n.kids[0];
  const std::size_t k = n.vars.size();
  if (k == 0) return (ev(body) ? 1u : 0u) < b;
  auto push = [&](const Tuple& t) {
    for (std::size_t j = 0; j < k; ++j) env_.emplace_back(n.vars[j], t[j]);
  };
  auto pop = [&] { env_.resize(env_.size() - k); };

  if (const FoNode* g = generator_atom(body, n.vars)) {
    std::size_t count = 0;
    for (const Tuple& t : generate(*g, n.vars)) {
      push(t);
      bool r = ev(body);
      pop();
      if (r && ++count >= b) return false;
    }
    return true;
  }

  std::vector<ObjectId> vals = free_values(n);
  std::vector<ObjectId> base;
  std::vector<ObjectId> pad;
  if (opt_.padding_size) {
    for (ObjectId o : naive_domain_) {
      if (i_.in_adom(o) || std::find(vals.begin(), vals.end(), o) != vals.end())
        base.push_back(o);
      else
        pad.push_back(o);
    }
  } else {
    base = i_.adom();
    for (ObjectId o : vals) {
      if (!i_.in_adom(o) && std::find(base.begin(), base.end(), o) == base.end()) base.push_back(o);
    }
    pad = unused_padding(vals, k);
  }
  // Positions take base values or generic objects; generic objects are used in
  // first-occurrence order so each equality pattern is tried once.
  std::size_t count = 0;
  Tuple t;
  t.resize(k);
  bool over = false;
  auto rec = [&](auto& self, std::size_t pos, std::size_t used) -> void {
    if (over) return;
    if (pos == k) {
      push(t);
      bool r = ev(body);
      pop();
      if (r && (used > 0 || ++count >= b)) over = true;
      return;
    }
    for (ObjectId o : base) {
      t[pos] = o;
      self(self, pos + 1, used);
      if (over) return;
    }
    for (std::size_t j = 0; j <= used && j < pad.size(); ++j) {
      t[pos] = pad[j];
      self(self, pos + 1, std::max(used, j + 1));
      if (over) return;
    }
  };
  rec(rec, 0, 0);
  return !over;
}

void Evaluator::pin(const Formula& g) {
  if (!pinned_.count(g.get())) pinned_.emplace(g.get(), g);
}

bool Evaluator::eval(const Formula& f, const Valuation& v) {
  Formula g = f->is_core ? f : normalize(f);
  pin(g);
  if (g->has_action_terms) throw Error("action terms must be suppressed before evaluation");
  for (Symbol x : g->free_vars) {
    if (!v.count(x)) throw Error("unbound free variable " + symbol_name(x));
  }
  env_.assign(v.begin(), v.end());
  if (opt_.padding_size) {
    std::set<ObjectId> dom(i_.adom().begin(), i_.adom().end());
    for (const auto& [x, o] : v) dom.insert(o);
    std::vector<ObjectId> taken(dom.begin(), dom.end());
    for (ObjectId p : unused_padding(taken, *opt_.padding_size)) dom.insert(p);
    naive_domain_.assign(dom.begin(), dom.end());
    // Memo entries depend on the domain in this mode.
    memo_.clear();
  }
  bool r = ev(*g);
  env_.clear();
  return r;
}

Answer Evaluator::answer(const Formula& f, const std::vector<Symbol>& out, const Valuation& fixed) {
  Formula g = f->is_core ? f : normalize(f);
  pin(g);
  if (g->has_action_terms) throw Error("action terms must be suppressed before evaluation");
  for (Symbol x : g->free_vars) {
    if (!fixed.count(x) && std::find(out.begin(), out.end(), x) == out.end())
      throw Error("unbound free variable " + symbol_name(x));
  }
  const std::size_t k = out.size();
  std::vector<ObjectId> base = i_.adom();
  std::vector<ObjectId> taken;
  for (const auto& [x, o] : fixed) {
    taken.push_back(o);
    if (!i_.in_adom(o) && std::find(base.begin(), base.end(), o) == base.end()) base.push_back(o);
  }
  std::vector<ObjectId> pad = unused_padding(taken, k);

  Answer ans;
  std::vector<Tuple> found;
  Tuple t;
  t.resize(k);
  auto test = [&]() {
    Valuation v = fixed;
    for (std::size_t j = 0; j < k; ++j) v[out[j]] = t[j];
    env_.assign(v.begin(), v.end());
    bool r = ev(*g);
    env_.clear();
    return r;
  };
  auto rec = [&](auto& self, std::size_t pos, std::size_t used) -> void {
    if (ans.infinite) return;
    if (pos == k) {
      if (test()) {
        if (used > 0)
          ans.infinite = true;
        else
          found.push_back(t);
      }
      return;
    }
    for (ObjectId o : base) {
      t[pos] = o;
      self(self, pos + 1, used);
      if (ans.infinite) return;
    }
    for (std::size_t j = 0; j <= used && j < pad.size(); ++j) {
      t[pos] = pad[j];
      self(self, pos + 1, std::max(used, j + 1));
      if (ans.infinite) return;
    }
  };
  if (opt_.padding_size) throw Error("answer() is only available in exact mode");
  rec(rec, 0, 0);
  if (!ans.infinite) ans.tuples = Relation(std::move(found));
  return ans;
}

bool eval_fo(const Interpretation& i, const Signature& sig, const Valuation& v, const Formula& f, EvalOptions opt) {
  Evaluator ev(i, sig, opt);
  return ev.eval(f, v);
}

Answer answer(const Interpretation& i, const Signature& sig, const Formula& f, const std::vector<Symbol>& out,
              const Valuation& fixed) {
  Evaluator ev(i, sig);
  return ev.answer(f, out, fixed);
}

namespace {

Formula suppress(const Formula& f, const Theory& t) {
  const FoNode& n = *f;
  if (!n.has_action_terms) return normalize(f);
  switch (n.kind) {
    case FoKind::ActEq:
      return fo::mk_act_eq(n.lhs, n.rhs);
    case FoKind::ExistsAct: {
      const Symbol a = n.vars[0];
      std::vector<Formula> alts;
      for (const ActionTypeDecl& d : t.actions) {
        std::vector<Symbol> ys;
        std::vector<Term> args;
        for (Symbol p : d.params) {
          ys.push_back(fresh_variable(symbol_name(p)));
          args.push_back(Term::var(ys.back()));
        }
        Formula inst = substitute(n.kids[0], {}, {{a, ActionTerm::apply(d.name, args)}});
        alts.push_back(fo::mk_exists(ys, suppress(inst, t)));
      }
      return fo::mk_or(std::move(alts));
    }
    case FoKind::Not:
      return fo::mk_not(suppress(n.kids[0], t));
    case FoKind::And:
    case FoKind::Or: {
      std::vector<Formula> ks;
      for (const Formula& k : n.kids) ks.push_back(suppress(k, t));
      return n.kind == FoKind::And ? fo::mk_and(std::move(ks)) : fo::mk_or(std::move(ks));
    }
    case FoKind::Implies:
      return fo::mk_implies(suppress(n.kids[0], t), suppress(n.kids[1], t));
    case FoKind::Iff:
      return fo::mk_iff(suppress(n.kids[0], t), suppress(n.kids[1], t));
    case FoKind::Exists:
      return fo::mk_exists(n.vars[0], suppress(n.kids[0], t));
    case FoKind::Forall:
      return fo::mk_forall(n.vars[0], suppress(n.kids[0], t));
    case FoKind::Count:
      return fo::mk_count(n.vars, suppress(n.kids[0], t), n.bound);
    default:
      return normalize(f);
  }
}

}  // namespace

Formula suppress_actions(const Formula& f, const Theory& t) { return suppress(f, t); }

}  // namespace bsc
