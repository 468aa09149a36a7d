// Finite abstraction of the induced transition system of a bounded theory, and a
// brute-force builder over a finite object pool.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsc/regression.hpp"
#include "bsc/transition_system.hpp"

namespace bsc {

struct AdomBounds {
  std::size_t bprime = 0;  // Σ_F b·arity(F) + |C|
  std::size_t cap = 0;     // 2·b′ + N
};

AdomBounds adom_bounds(const Theory& t, std::size_t b);

struct AbstractionConfig {
  std::size_t max_states = 100000;
  std::optional<std::size_t> max_adom;  // defaults to the cap of adom_bounds
  bool deterministic = true;
  // Receives one line per expansion event when set.
  std::function<void(const std::string&)> trace;
};

struct AbstractionResult {
  FiniteTS ts;
  // First action instance that produced each transition.
  std::map<std::pair<std::size_t, std::size_t>, std::string> edge_label;
  std::map<std::pair<std::size_t, std::size_t>, ActionInstance> edge_action;
  // Predecessor and action for each state added by expansion (the BFS tree).
  std::vector<std::optional<std::pair<std::size_t, std::string>>> parent;
  AdomBounds bounds;
  std::size_t adom_size = 0;  // |⋃_q adom(I(q))|
  std::size_t expansions = 0;

  // Action labels from the initial state to q along the BFS tree.
  std::vector<std::string> path_to(std::size_t q) const;
};

// Objects already used in the TS but absent from `state`, in canonical order, then
// fresh objects "#n" not used anywhere, lowest index first, up to n objects in total.
std::vector<ObjectId> choose_object_pool(const Interpretation& state, const std::vector<ObjectId>& adom_q,
                                         std::size_t n);

// Looks up a state of `ts` isomorphic to i′ by a map that is the identity on
// fix ∩ adom(i′) and sends other objects outside fix.
class StateIndex {
 public:
  void add(std::size_t q, const Interpretation& i);
  std::optional<std::pair<std::size_t, IsoMap>> find(const Interpretation& iprime, const FiniteTS& ts,
                                                     const std::vector<ObjectId>& fix) const;

 private:
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

std::optional<std::pair<std::size_t, IsoMap>> find_match(const Interpretation& iprime, const FiniteTS& ts,
                                                         const std::vector<ObjectId>& fix);

// Throws BoundViolation if some reachable state holds more than b tuples in a fluent,
// GuardExceeded if a guard is hit.
AbstractionResult build_abstract_ts(const Theory& t, const Interpretation& init, std::size_t b,
                                    const AbstractionConfig& cfg = {});
AbstractionResult build_abstract_ts(const Theory& t, std::size_t b, const AbstractionConfig& cfg = {});

// Exhaustive expansion with action arguments drawn from `pool`, no folding.
FiniteTS build_concrete_ts(const Theory& t, const Interpretation& init, const std::vector<ObjectId>& pool,
                           std::size_t max_states = 200000);

// Named constants followed by fresh objects #0.. up to `size` objects.
std::vector<ObjectId> make_pool(const Theory& t, std::size_t size);

}  // namespace bsc
