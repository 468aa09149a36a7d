// Model checking of mu-calculus formulas with LIVE-guarded quantification over a
// finite transition system.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsc/fo_eval.hpp"
#include "bsc/mu_formula.hpp"
#include "bsc/transition_system.hpp"

namespace bsc {

class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n, bool full = false);

  std::size_t universe() const { return n_; }
  bool contains(std::size_t q) const { return (w_[q >> 6] >> (q & 63)) & 1u; }
  void insert(std::size_t q) { w_[q >> 6] |= std::uint64_t{1} << (q & 63); }
  void erase(std::size_t q) { w_[q >> 6] &= ~(std::uint64_t{1} << (q & 63)); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> members() const;

  StateSet& operator&=(const StateSet& o);
  StateSet& operator|=(const StateSet& o);
  StateSet complement() const;
  bool subset_of(const StateSet& o) const;

  friend bool operator==(const StateSet& a, const StateSet& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
  friend bool operator!=(const StateSet& a, const StateSet& b) { return !(a == b); }

 private:
  void trim();
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

using PredEnv = std::map<Symbol, StateSet>;

struct Verdict {
  bool holds = false;
  // For EF-shaped formulas that hold and AG-shaped formulas that fail: states from
  // the initial state to a witness / violating state.
  std::vector<std::size_t> path;
  std::string path_kind;  // "witness", "counterexample" or empty
};

class ModelChecker {
 public:
  explicit ModelChecker(const FiniteTS& ts);

  StateSet extension(const MuFormula& f, const Valuation& v = {}, const PredEnv& env = {});
  Verdict check(const MuFormula& f);
  // Same as check with an explicit valuation; for closed formulas it must not matter.
  bool holds_under(const MuFormula& f, const Valuation& v);

  // Number of least/greatest fixpoint iterations performed so far.
  std::size_t iterations() const { return iterations_; }
  // Callback receiving each approximant of every fixpoint computation.
  void set_observer(std::function<void(const MuNode&, const StateSet&)> fn) { observer_ = std::move(fn); }

 private:
  struct Key {
    const MuNode* node;
    std::vector<ObjectId> vals;
    bool operator==(const Key& o) const { return node == o.node && vals == o.vals; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<const void*>()(k.node);
      for (ObjectId o : k.vals) hash_combine(h, o.raw());
      return h;
    }
  };

  StateSet ext(const MuNode& n, Valuation& v, PredEnv& env);
  StateSet fo_leaf(const MuNode& n, const Valuation& v);
  bool live(std::size_t q, const std::vector<Symbol>& vars, const Valuation& v) const;
  Evaluator& evaluator(std::size_t q);
  std::vector<std::size_t> path_to(const StateSet& target, const StateSet* within) const;

  const FiniteTS& ts_;
  std::vector<std::unique_ptr<Evaluator>> evals_;
  std::vector<ObjectId> adom_q_;
  std::vector<std::vector<std::size_t>> pred_;
  std::unordered_map<Key, StateSet, KeyHash> cache_;
  // Cache keys are node addresses; keep every evaluated formula alive.
  std::vector<MuFormula> pinned_;
  std::size_t iterations_ = 0;
  std::function<void(const MuNode&, const StateSet&)> observer_;
};

Verdict check(const FiniteTS& ts, const MuFormula& f);

}  // namespace bsc
