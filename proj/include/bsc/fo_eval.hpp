// Evaluation of situation-suppressed FO formulas over an interpretation whose
// domain is infinite but whose active domain is finite.
#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bsc/formula.hpp"
#include "bsc/interpretation.hpp"
#include "bsc/theory.hpp"

namespace bsc {

using Valuation = std::map<Symbol, ObjectId>;

struct EvalOptions {
  // When set, every quantifier ranges over adom(I) ∪ img(v) ∪ P with P a fixed set of
  // this many padding objects. Otherwise each quantifier gets adom(I), the values of
  // the node's free variables, and one unused padding object.
  std::optional<std::size_t> padding_size;
};

struct Answer {
  bool infinite = false;
  Relation tuples;  // exact when !infinite
};

// One evaluation session over a fixed interpretation; memoizes quantified subformulas.
class Evaluator {
 public:
  Evaluator(const Interpretation& i, const Signature& sig, EvalOptions opt = {});

  // f must be action-free; it is normalized first unless already core.
  bool eval(const Formula& f, const Valuation& v = {});
  Answer answer(const Formula& f, const std::vector<Symbol>& out, const Valuation& fixed = {});

  const Interpretation& interpretation() const { return i_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Key {
    const FoNode* node;
    std::array<ObjectId, 4> vals;
    std::uint8_t n;
    bool operator==(const Key& o) const {
      return node == o.node && n == o.n && std::equal(vals.begin(), vals.begin() + n, o.vals.begin());
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<const void*>()(k.node);
      for (std::uint8_t j = 0; j < k.n; ++j) hash_combine(h, k.vals[j].raw());
      return h;
    }
  };

  bool ev(const FoNode& n);
  bool ev_exists(const FoNode& n);
  bool ev_count(const FoNode& n);
  ObjectId value(const Term& t) const;
  std::optional<ObjectId> lookup(Symbol v) const;
  std::vector<ObjectId> free_values(const FoNode& n) const;
  std::vector<ObjectId> quant_domain(const FoNode& n) const;
  std::vector<ObjectId> unused_padding(const std::vector<ObjectId>& taken, std::size_t k) const;
  const FoNode* generator_atom(const FoNode& body, const std::vector<Symbol>& vars) const;
  std::vector<Tuple> generate(const FoNode& atom, const std::vector<Symbol>& vars) const;
  std::size_t fluent(Symbol s) const;

  Interpretation i_;
  Signature sig_;
  EvalOptions opt_;
  std::unordered_map<Symbol, std::size_t> fluent_pos_;
  std::unordered_map<Symbol, ObjectId> const_val_;
  std::vector<std::pair<Symbol, ObjectId>> env_;
  std::vector<ObjectId> naive_domain_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  // Memo keys are node addresses; keep every evaluated formula alive.
  void pin(const Formula& g);
  std::unordered_map<const FoNode*, Formula> pinned_;
};

bool eval_fo(const Interpretation& i, const Signature& sig, const Valuation& v, const Formula& f,
             EvalOptions opt = {});

Answer answer(const Interpretation& i, const Signature& sig, const Formula& f, const std::vector<Symbol>& out,
              const Valuation& fixed = {});

// Removes action terms: equalities between applied action terms are decided by
// unique names, quantification over actions becomes a disjunction over action types.
// The result is normalized.
Formula suppress_actions(const Formula& f, const Theory& t);

}  // namespace bsc
