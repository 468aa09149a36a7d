// Shared fixtures for the test binaries.
#pragma once

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bsc/abstraction.hpp"
#include "bsc/formula.hpp"
#include "bsc/interpretation.hpp"
#include "bsc/parser.hpp"
#include "bsc/regression.hpp"
#include "bsc/theory.hpp"

namespace bsc::testing {

inline std::string corpus(const std::string& rel) { return std::string(BSC_CORPUS_DIR) + "/" + rel; }

inline Theory load(const std::string& name) { return load_theory(corpus(name + ".bsc")); }

inline ObjectId obj(std::string_view s) { return ObjectId::parse(s); }

inline Tuple tup(std::initializer_list<std::string_view> xs) {
  Tuple t;
  for (auto x : xs) t.push_back(obj(x));
  return t;
}

// Interpretation over `t`'s signature given per-fluent tuples by fluent name.
inline Interpretation state(const Theory& t, const std::vector<std::pair<std::string, Tuple>>& facts) {
  std::vector<std::vector<Tuple>> rels(t.fluents.size());
  for (const auto& [name, tp] : facts) rels.at(*t.fluent_index(intern(name))).push_back(tp);
  std::vector<Relation> rs;
  for (auto& r : rels) rs.emplace_back(std::move(r));
  return Interpretation(std::move(rs), t.constant_objects());
}

// Random action-free FO formulas over a theory's fluents and constants.
class FormulaGen {
 public:
  FormulaGen(const Theory& t, std::uint32_t seed) : t_(t), rng_(seed) {}

  Formula closed(int depth) { return gen(depth, {}); }
  Formula with_free(int depth, const std::vector<Symbol>& free) { return gen(depth, free); }

  std::mt19937& rng() { return rng_; }

 private:
  // Requires some variable or constant in scope.
  Term term(const std::vector<Symbol>& vars) {
    const std::size_t nc = t_.constants.size();
    std::uniform_int_distribution<std::size_t> d(0, vars.size() + nc - 1);
    std::size_t k = d(rng_);
    if (k < vars.size()) return Term::var(vars[k]);
    return Term::constant(t_.constants[k - vars.size()]);
  }

  Formula atom(const std::vector<Symbol>& vars) {
    const bool no_terms = vars.empty() && t_.constants.empty();
    std::uniform_int_distribution<std::size_t> pick(0, t_.fluents.size() + 1);
    std::size_t k = pick(rng_);
    if (k >= t_.fluents.size()) return no_terms ? fo::True() : fo::Eq(term(vars), term(vars));
    const FluentDecl& f = t_.fluents[k];
    if (no_terms && f.arity > 0) return fo::True();
    std::vector<Term> args;
    for (std::size_t j = 0; j < f.arity; ++j) args.push_back(term(vars));
    return fo::Atom(f.name, args);
  }

  Formula gen(int depth, std::vector<Symbol> vars) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 7);
    switch (pick(rng_)) {
      case 0:
      case 1:
        return atom(vars);
      case 2:
        return fo::Not(gen(depth - 1, vars));
      case 3:
        return fo::And(gen(depth - 1, vars), gen(depth - 1, vars));
      case 4:
        return fo::Or(gen(depth - 1, vars), gen(depth - 1, vars));
      case 5:
      case 6: {
        Symbol x = fresh_variable("v");
        vars.push_back(x);
        Formula body = gen(depth - 1, vars);
        return pick(rng_) % 2 ? fo::Exists(x, body) : fo::Forall(x, body);
      }
      default: {
        std::uniform_int_distribution<int> nv(1, 2), bd(1, 3);
        std::vector<Symbol> cv;
        int n = nv(rng_);
        for (int j = 0; j < n; ++j) {
          cv.push_back(fresh_variable("c"));
          vars.push_back(cv.back());
        }
        return fo::Count(cv, gen(depth - 1, vars), static_cast<std::size_t>(bd(rng_)));
      }
    }
  }

  const Theory& t_;
  std::mt19937 rng_;
};

// Random interpretation with at most `max_tuples` tuples per fluent over `objs`.
inline Interpretation random_state(const Theory& t, const std::vector<ObjectId>& objs, std::size_t max_tuples,
                                   std::mt19937& rng) {
  std::vector<Relation> rels;
  std::uniform_int_distribution<std::size_t> cnt(0, max_tuples), o(0, objs.size() - 1);
  for (const FluentDecl& f : t.fluents) {
    std::vector<Tuple> ts;
    std::size_t n = cnt(rng);
    for (std::size_t k = 0; k < n; ++k) {
      Tuple tp;
      for (std::size_t j = 0; j < f.arity; ++j) tp.push_back(objs[o(rng)]);
      ts.push_back(tp);
    }
    rels.emplace_back(std::move(ts));
  }
  return Interpretation(std::move(rels), t.constant_objects());
}

// A random injective renaming of the non-constant objects in `objs` into fresh
// objects starting at index `base`.
inline std::unordered_map<ObjectId, ObjectId> random_renaming(const std::vector<ObjectId>& objs,
                                                              const std::vector<ObjectId>& constants,
                                                              std::uint32_t base, std::mt19937& rng) {
  std::vector<ObjectId> targets;
  for (std::uint32_t k = 0; k < objs.size(); ++k) targets.push_back(ObjectId::fresh(base + k));
  std::shuffle(targets.begin(), targets.end(), rng);
  std::unordered_map<ObjectId, ObjectId> h;
  std::size_t k = 0;
  for (ObjectId o : objs) {
    if (std::find(constants.begin(), constants.end(), o) != constants.end()) continue;
    h[o] = targets[k++];
  }
  return h;
}

// Every ground instance of every action type with arguments from `pool`.
inline std::vector<ActionInstance> all_instances(const Theory& t, const std::vector<ObjectId>& pool) {
  std::vector<ActionInstance> out;
  for (std::size_t a = 0; a < t.actions.size(); ++a) {
    const std::size_t n = t.actions[a].params.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      ActionInstance ai{a, {}};
      for (std::size_t k : idx) ai.args.push_back(pool[k]);
      out.push_back(std::move(ai));
      std::size_t j = 0;
      while (j < n && ++idx[j] == pool.size()) idx[j++] = 0;
      if (j == n) break;
    }
  }
  return out;
}

inline std::vector<ActionInstance> executable(const Theory& t, const Interpretation& i,
                                              const std::vector<ObjectId>& pool) {
  std::vector<ActionInstance> out;
  for (ActionInstance& a : all_instances(t, pool)) {
    if (poss(i, a, t)) out.push_back(std::move(a));
  }
  return out;
}

// State reached from the initial situation by up to `depth` random executable actions.
inline Interpretation random_walk(const Theory& t, const std::vector<ObjectId>& pool, int depth, std::mt19937& rng) {
  Interpretation i = t.initial_interpretation();
  std::uniform_int_distribution<int> len(0, depth);
  for (int k = len(rng); k > 0; --k) {
    auto ex = executable(t, i, pool);
    if (ex.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, ex.size() - 1);
    i = apply_ssa(i, ex[pick(rng)], t);
  }
  return i;
}

// Closed temporal properties over the warehouse vocabulary (valid for k >= 1).
inline std::vector<std::string> warehouse_formulas() {
  return {
      "EF (not exists x. exists l. At(x,l))",
      "AG EF (not exists x. exists l. At(x,l))",
      "AG (forall l. (exists x. At(x,l)) implies dia(not exists x. At(x,l)))",
      "AG (forall l. (exists x. At(x,l)) implies dia(live(l) and dia(not exists x. At(x,l))))",
      "AG ((exists x. At(x, ShipDock)) implies dia(not exists x. At(x, ShipDock)))",
      "EF (exists x. At(x, SL1))",
      "AG (count(x, l | At(x, l)) < 3)",
      "AG (forall x. (exists l. At(x,l)) implies mu Z. (not exists l. At(x,l)) or live(x) and dia(Z))",
      "nu Z. (forall x. forall l. At(x,l) implies IsLoc(l)) and box(Z)",
      "EF (exists x. At(x, SL1) and dia(exists y. At(y, ShipDock) and At(x, SL1)))",
      "exists l. IsLoc(l) and box(IsLoc(l))",
      "AG AF (not exists x. At(x, ShipDock))",
      "dia(dia(exists x. At(x, SL1)))",
      "not EF (exists x. At(x, ShipDock) and At(x, SL1))",
      "EG (exists x. exists l. At(x, l)) or box(false)",
      "mu Z. (exists x. At(x, SL1) and box(Z)) or dia(Z)",
  };
}

// Same system with every label renamed by h.
inline FiniteTS renamed_ts(const FiniteTS& ts, const std::unordered_map<ObjectId, ObjectId>& h) {
  FiniteTS out(ts.signature());
  for (const Interpretation& i : ts.labels()) out.add_state(i.renamed(h));
  for (auto [a, b] : ts.transitions()) out.add_transition(a, b);
  out.set_initial(ts.initial());
  return out;
}

// Same system with state ids shuffled.
inline FiniteTS permuted_ts(const FiniteTS& ts, std::mt19937& rng) {
  std::vector<std::size_t> perm(ts.num_states());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  FiniteTS out(ts.signature());
  for (std::size_t k = 0; k < perm.size(); ++k) out.add_state(ts.label(perm[k]));
  for (auto [a, b] : ts.transitions()) out.add_transition(inv[a], inv[b]);
  out.set_initial(inv[ts.initial()]);
  return out;
}

// Duplicates one state: the copy gets the same label and successors, and about half
// of the edges into the original are redirected to it.
inline FiniteTS unfolded_ts(const FiniteTS& ts, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, ts.num_states() - 1);
  std::bernoulli_distribution coin(0.5);
  const std::size_t q = pick(rng);
  FiniteTS out(ts.signature());
  for (const Interpretation& i : ts.labels()) out.add_state(i);
  const std::size_t copy = out.add_state(ts.label(q));
  for (auto [a, b] : ts.transitions()) out.add_transition(a, b == q && coin(rng) ? copy : b);
  for (std::size_t r : ts.successors(q)) out.add_transition(copy, r);
  out.set_initial(ts.initial() == q && coin(rng) ? copy : ts.initial());
  return out;
}

inline FiniteTS with_initial_state(const FiniteTS& ts, std::size_t q) {
  FiniteTS out = ts;
  out.set_initial(q);
  return out;
}

}  // namespace bsc::testing
