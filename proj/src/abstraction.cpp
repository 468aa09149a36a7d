#include "bsc/abstraction.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "bsc/error.hpp"
#include "bsc/isomorphism.hpp"

namespace bsc {

AdomBounds adom_bounds(const Theory& t, std::size_t b) {
  AdomBounds r;
  for (const FluentDecl& f : t.fluents) r.bprime += b * f.arity;
  r.bprime += t.constants.size();
  r.cap = 2 * r.bprime + t.max_action_arity();
  return r;
}

std::vector<std::string> AbstractionResult::path_to(std::size_t q) const {
  std::vector<std::string> out;
  while (q < parent.size() && parent[q]) {
    out.push_back(parent[q]->second);
    q = parent[q]->first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ObjectId> choose_object_pool(const Interpretation& state, const std::vector<ObjectId>& adom_q,
                                         std::size_t n) {
  std::vector<ObjectId> out;
  for (ObjectId o : adom_q) {
    if (out.size() == n) return out;
    if (!state.in_adom(o)) out.push_back(o);
  }
  for (std::uint32_t k = 0; out.size() < n; ++k) {
    ObjectId o = ObjectId::fresh(k);
    if (!std::binary_search(adom_q.begin(), adom_q.end(), o) && !state.in_adom(o)) out.push_back(o);
  }
  return out;
}

void StateIndex::add(std::size_t q, const Interpretation& i) { buckets_[iso_invariant(i)].push_back(q); }

std::optional<std::pair<std::size_t, IsoMap>> StateIndex::find(const Interpretation& iprime, const FiniteTS& ts,
                                                               const std::vector<ObjectId>& fix) const {
  auto it = buckets_.find(iso_invariant(iprime));
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t q : it->second) {
    if (auto h = find_isomorphism_fixing(iprime, ts.label(q), fix)) return std::make_pair(q, *h);
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, IsoMap>> find_match(const Interpretation& iprime, const FiniteTS& ts,
                                                         const std::vector<ObjectId>& fix) {
  std::vector<ObjectId> f = fix;
  std::sort(f.begin(), f.end());
  for (std::size_t q = 0; q < ts.num_states(); ++q) {
    if (auto h = find_isomorphism_fixing(iprime, ts.label(q), f)) return std::make_pair(q, *h);
  }
  return std::nullopt;
}

namespace {

// Calls fn for every tuple in dom^k, lexicographically.
template <class Fn>
void for_each_tuple(const std::vector<ObjectId>& dom, std::size_t k, Fn&& fn) {
  std::vector<ObjectId> cur(k);
  if (k == 0) {
    fn(cur);
    return;
  }
  if (dom.empty()) return;
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    for (std::size_t j = 0; j < k; ++j) cur[j] = dom[idx[j]];
    fn(cur);
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (++idx[j] < dom.size()) break;
      idx[j] = 0;
      if (j == 0) return;
    }
  }
}

std::string over_bound_message(const Interpretation& i, const Theory& t, std::size_t b) {
  for (std::size_t f = 0; f < t.fluents.size(); ++f) {
    if (i.relation(f).size() > b)
      return symbol_name(t.fluents[f].name) + " holds " + std::to_string(i.relation(f).size()) +
             " tuples, more than the bound " + std::to_string(b);
  }
  return "bound exceeded";
}

}  // namespace

AbstractionResult build_abstract_ts(const Theory& t, const Interpretation& init, std::size_t b,
                                    const AbstractionConfig& cfg) {
  Dynamics dyn(t);
  AbstractionResult res;
  res.bounds = adom_bounds(t, b);
  const std::size_t max_adom = cfg.max_adom.value_or(res.bounds.cap);
  const std::size_t n = t.max_action_arity();
  const Signature sig = t.signature();

  if (!state_within_bound(init, b))
    throw BoundViolation("initial situation exceeds the bound: " + over_bound_message(init, t, b), {});

  res.ts = FiniteTS(sig);
  StateIndex index;
  std::set<ObjectId> adom_set(init.adom().begin(), init.adom().end());
  std::vector<ObjectId> adom_q(adom_set.begin(), adom_set.end());
  std::size_t q0 = res.ts.add_state(init);
  res.ts.set_initial(q0);
  res.parent.emplace_back();
  index.add(q0, init);

  std::deque<std::size_t> work{q0};
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop_front();
    ++res.expansions;
    // Copy: add_state may reallocate the label storage.
    const Interpretation cur = res.ts.label(q);
    std::vector<ObjectId> pool = choose_object_pool(cur, adom_q, n);
    std::vector<ObjectId> dom = cur.adom();
    dom.insert(dom.end(), pool.begin(), pool.end());
    std::sort(dom.begin(), dom.end());
    if (cfg.trace) {
      std::string ps;
      for (ObjectId o : pool) ps += " " + o.str();
      cfg.trace("expand " + std::to_string(q) + " [" + to_string(cur, sig) + "] pool:" + ps);
    }
    Evaluator ev(cur, sig);
    const std::vector<ObjectId>& fix = cur.adom();
    for (std::size_t a = 0; a < t.actions.size(); ++a) {
      for_each_tuple(dom, t.actions[a].params.size(), [&](const std::vector<ObjectId>& args) {
        ActionInstance act{a, args};
        if (!dyn.poss(ev, act)) return;
        Interpretation next = dyn.apply(ev, act);
        std::string label = to_string(act, t);
        if (!state_within_bound(next, b)) {
          std::vector<std::string> trace = res.path_to(q);
          trace.push_back(label);
          throw BoundViolation("bound violated after " + label + ": " + over_bound_message(next, t, b), trace);
        }
        std::size_t target;
        if (auto m = index.find(next, res.ts, fix)) {
          target = m->first;
          if (cfg.trace) cfg.trace("  " + label + " -> " + std::to_string(target) + " via " + to_string(m->second));
        } else {
          if (res.ts.num_states() >= cfg.max_states)
            throw GuardExceeded("abstract transition system exceeds " + std::to_string(cfg.max_states) + " states");
          target = res.ts.add_state(next);
          res.parent.emplace_back(std::make_pair(q, label));
          index.add(target, next);
          work.push_back(target);
          bool grew = false;
          for (ObjectId o : next.adom()) grew = adom_set.insert(o).second || grew;
          if (grew) {
            adom_q.assign(adom_set.begin(), adom_set.end());
            if (adom_q.size() > max_adom)
              throw GuardExceeded("active domain of the abstract system exceeds " + std::to_string(max_adom) +
                                  " objects");
          }
          if (cfg.trace) cfg.trace("  " + label + " -> " + std::to_string(target) + " (new)");
        }
        res.ts.add_transition(q, target);
        res.edge_label.emplace(std::make_pair(q, target), label);
        res.edge_action.emplace(std::make_pair(q, target), act);
      });
    }
  }
  res.adom_size = adom_q.size();
  return res;
}

AbstractionResult build_abstract_ts(const Theory& t, std::size_t b, const AbstractionConfig& cfg) {
  return build_abstract_ts(t, t.initial_interpretation(), b, cfg);
}

FiniteTS build_concrete_ts(const Theory& t, const Interpretation& init, const std::vector<ObjectId>& pool,
                           std::size_t max_states) {
  std::vector<ObjectId> dom = pool;
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  for (ObjectId o : init.adom()) {
    if (!std::binary_search(dom.begin(), dom.end(), o))
      throw Error("object pool misses " + o.str() + " from the initial active domain");
  }
  Dynamics dyn(t);
  const Signature sig = t.signature();
  FiniteTS ts(sig);
  std::unordered_map<Interpretation, std::size_t> seen;
  std::size_t q0 = ts.add_state(init);
  ts.set_initial(q0);
  seen.emplace(init, q0);
  std::deque<std::size_t> work{q0};
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop_front();
    const Interpretation cur = ts.label(q);
    Evaluator ev(cur, sig);
    for (std::size_t a = 0; a < t.actions.size(); ++a) {
      for_each_tuple(dom, t.actions[a].params.size(), [&](const std::vector<ObjectId>& args) {
        ActionInstance act{a, args};
        if (!dyn.poss(ev, act)) return;
        Interpretation next = dyn.apply(ev, act);
        auto it = seen.find(next);
        std::size_t target;
        if (it != seen.end()) {
          target = it->second;
        } else {
          if (ts.num_states() >= max_states)
            throw GuardExceeded("concrete transition system exceeds " + std::to_string(max_states) + " states");
          target = ts.add_state(next);
          seen.emplace(std::move(next), target);
          work.push_back(target);
        }
        ts.add_transition(q, target);
      });
    }
  }
  return ts;
}

std::vector<ObjectId> make_pool(const Theory& t, std::size_t size) {
  std::vector<ObjectId> pool = t.constant_objects();
  if (t.has_complete_init()) {
    const Interpretation init = t.initial_interpretation();
    for (ObjectId o : init.adom()) {
      if (std::find(pool.begin(), pool.end(), o) == pool.end()) pool.push_back(o);
    }
  }
  for (std::uint32_t k = 0; pool.size() < size; ++k) {
    ObjectId o = ObjectId::fresh(k);
    if (std::find(pool.begin(), pool.end(), o) == pool.end()) pool.push_back(o);
  }
  return pool;
}

}  // namespace bsc
