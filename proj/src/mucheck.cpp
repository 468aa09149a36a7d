#include "bsc/mucheck.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "bsc/error.hpp"

namespace bsc {

StateSet::StateSet(std::size_t n, bool full) : n_(n), w_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) { trim(); }

void StateSet::trim() {
  if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t StateSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> StateSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q) {
    if (contains(q)) out.push_back(q);
  }
  return out;
}

StateSet& StateSet::operator&=(const StateSet& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet r = *this;
  for (std::uint64_t& w : r.w_) w = ~w;
  r.trim();
  return r;
}

bool StateSet::subset_of(const StateSet& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] & ~o.w_[i]) return false;
  }
  return true;
}

ModelChecker::ModelChecker(const FiniteTS& ts) : ts_(ts), evals_(ts.num_states()), adom_q_(ts.adom_union()) {
  pred_.resize(ts.num_states());
  for (std::size_t q = 0; q < ts.num_states(); ++q) {
    for (std::size_t r : ts.successors(q)) pred_[r].push_back(q);
  }
}

Evaluator& ModelChecker::evaluator(std::size_t q) {
  if (!evals_[q]) evals_[q] = std::make_unique<Evaluator>(ts_.label(q), ts_.signature());
  return *evals_[q];
}

bool ModelChecker::live(std::size_t q, const std::vector<Symbol>& vars, const Valuation& v) const {
  for (Symbol x : vars) {
    auto it = v.find(x);
    if (it == v.end()) throw Error("unbound variable " + symbol_name(x) + " in live()");
    if (!ts_.label(q).in_adom(it->second)) return false;
  }
  return true;
}

StateSet ModelChecker::fo_leaf(const MuNode& n, const Valuation& v) {
  StateSet s(ts_.num_states());
  Valuation slice;
  for (Symbol x : n.fo->free_vars) {
    auto it = v.find(x);
    if (it == v.end()) throw Error("unbound variable " + symbol_name(x));
    slice.emplace(x, it->second);
  }
  for (std::size_t q = 0; q < ts_.num_states(); ++q) {
    if (evaluator(q).eval(n.fo, slice)) s.insert(q);
  }
  return s;
}

StateSet ModelChecker::ext(const MuNode& n, Valuation& v, PredEnv& env) {
  const std::size_t nq = ts_.num_states();
  const bool cacheable = n.free_pvars.empty() && n.kind != MuKind::Live;
  Key key{&n, {}};
  if (cacheable) {
    for (Symbol x : n.free_vars) {
      auto it = v.find(x);
      if (it == v.end()) throw Error("unbound variable " + symbol_name(x));
      key.vals.push_back(it->second);
    }
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  StateSet out(nq);
  switch (n.kind) {
    case MuKind::Fo:
      out = fo_leaf(n, v);
      break;
    case MuKind::Live:
      for (std::size_t q = 0; q < nq; ++q) {
        if (live(q, n.vars, v)) out.insert(q);
      }
      break;
    case MuKind::Not:
      out = ext(*n.kids[0], v, env).complement();
      break;
    case MuKind::And:
      out = StateSet(nq, true);
      for (const MuFormula& k : n.kids) {
        out &= ext(*k, v, env);
        if (out.empty()) break;
      }
      break;
    case MuKind::Or:
      for (const MuFormula& k : n.kids) out |= ext(*k, v, env);
      break;
    case MuKind::ExistsLive: {
      const Symbol x = n.vars[0];
      auto saved = v.find(x) == v.end() ? std::optional<ObjectId>() : std::optional<ObjectId>(v[x]);
      for (ObjectId d : adom_q_) {
        v[x] = d;
        StateSet body = ext(*n.kids[0], v, env);
        for (std::size_t q : body.members()) {
          if (ts_.label(q).in_adom(d)) out.insert(q);
        }
      }
      if (saved)
        v[x] = *saved;
      else
        v.erase(x);
      break;
    }
    case MuKind::Dia:
    case MuKind::Box: {
      StateSet body = ext(*n.kids[0], v, env);
      for (std::size_t q = 0; q < nq; ++q) {
        if (!live(q, n.vars, v)) continue;
        const auto& succ = ts_.successors(q);
        bool ok = n.kind == MuKind::Dia
                      ? std::any_of(succ.begin(), succ.end(), [&](std::size_t r) { return body.contains(r); })
                      : std::all_of(succ.begin(), succ.end(), [&](std::size_t r) { return body.contains(r); });
        if (ok) out.insert(q);
      }
      break;
    }
    case MuKind::Var: {
      auto it = env.find(n.pvar);
      if (it == env.end()) throw Error("free predicate variable " + symbol_name(n.pvar));
      out = it->second;
      break;
    }
    case MuKind::Mu:
    case MuKind::Nu: {
      const bool least = n.kind == MuKind::Mu;
      auto saved = env.find(n.pvar) == env.end() ? std::optional<StateSet>() : std::optional<StateSet>(env[n.pvar]);
      StateSet cur(nq, !least);
      for (;;) {
        ++iterations_;
        if (observer_) observer_(n, cur);
        env[n.pvar] = cur;
        StateSet next = ext(*n.kids[0], v, env);
        if (next == cur) break;
        cur = std::move(next);
      }
      if (saved)
        env[n.pvar] = *saved;
      else
        env.erase(n.pvar);
      out = cur;
      break;
    }
  }
  if (cacheable) cache_.emplace(std::move(key), out);
  return out;
}

StateSet ModelChecker::extension(const MuFormula& f, const Valuation& v, const PredEnv& env) {
  if (auto err = monotonicity_error(f)) throw Error("monotonicity violation: " + *err);
  pinned_.push_back(f);
  Valuation vv = v;
  PredEnv ee = env;
  return ext(*f, vv, ee);
}

bool ModelChecker::holds_under(const MuFormula& f, const Valuation& v) {
  if (ts_.num_states() == 0) throw Error("empty transition system");
  return extension(f, v).contains(ts_.initial());
}

// Shortest path from the initial state to `target` through states of `within`.
std::vector<std::size_t> ModelChecker::path_to(const StateSet& target, const StateSet* within) const {
  const std::size_t nq = ts_.num_states();
  std::vector<std::size_t> prev(nq, nq);
  std::vector<char> seen(nq, 0);
  std::deque<std::size_t> work{ts_.initial()};
  seen[ts_.initial()] = 1;
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop_front();
    if (target.contains(q)) {
      std::vector<std::size_t> path;
      for (std::size_t s = q; s != nq; s = prev[s]) path.push_back(s);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (within && !within->contains(q)) continue;
    for (std::size_t r : ts_.successors(q)) {
      if (!seen[r]) {
        seen[r] = 1;
        prev[r] = q;
        work.push_back(r);
      }
    }
  }
  return {};
}

namespace {

// mu Z. (phi | dia(Z)) or nu Z. (phi & box(Z)) with plain subformula phi.
const MuNode* ctl_operand(const MuNode& n, MuKind fix, MuKind conn, MuKind modal) {
  if (n.kind != fix || n.kids[0]->kind != conn || n.kids[0]->kids.size() != 2) return nullptr;
  const MuNode& a = *n.kids[0]->kids[0];
  const MuNode& m = *n.kids[0]->kids[1];
  if (m.kind != modal || m.kids[0]->kind != MuKind::Var || m.kids[0]->pvar != n.pvar) return nullptr;
  if (std::find(a.free_pvars.begin(), a.free_pvars.end(), n.pvar) != a.free_pvars.end()) return nullptr;
  return &a;
}

}  // namespace

Verdict ModelChecker::check(const MuFormula& f) {
  if (!free_individual_vars(f).empty() || !f->free_pvars.empty()) throw Error("formula is not closed");
  Verdict v;
  StateSet all = extension(f);
  v.holds = all.contains(ts_.initial());
  if (const MuNode* phi = ctl_operand(*f, MuKind::Mu, MuKind::Or, MuKind::Dia); phi && v.holds) {
    Valuation e;
    PredEnv env;
    StateSet goal = ext(*phi, e, env);
    v.path = path_to(goal, &all);
    v.path_kind = "witness";
  } else if (const MuNode* psi = ctl_operand(*f, MuKind::Nu, MuKind::And, MuKind::Box); psi && !v.holds) {
    Valuation e;
    PredEnv env;
    StateSet bad = ext(*psi, e, env).complement();
    v.path = path_to(bad, nullptr);
    v.path_kind = "counterexample";
  }
  return v;
}

Verdict check(const FiniteTS& ts, const MuFormula& f) {
  ModelChecker mc(ts);
  return mc.check(f);
}

}  // namespace bsc
