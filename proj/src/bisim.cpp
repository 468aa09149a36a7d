#include "bsc/bisim.hpp"

#include <map>

#include "bsc/isomorphism.hpp"

namespace bsc {

bool compatible(const IsoMap& h, const Interpretation& q1, const Interpretation& q2, const IsoMap& g,
                const Interpretation& q1next) {
  for (ObjectId o : q1next.adom()) {
    ObjectId go = *g.at(o);
    if (q1.in_adom(o)) {
      if (*h.at(o) != go) return false;
    } else if (q2.in_adom(go)) {
      return false;
    }
  }
  return true;
}

BisimResult is_bisimilar(const FiniteTS& t1, const FiniteTS& t2) {
  BisimResult res;
  const std::size_t n1 = t1.num_states(), n2 = t2.num_states();
  if (n1 == 0 || n2 == 0) return res;

  // Candidate maps per state pair, pruned by cheap invariants first.
  std::vector<std::size_t> inv1(n1), inv2(n2);
  for (std::size_t q = 0; q < n1; ++q) inv1[q] = iso_invariant(t1.label(q));
  for (std::size_t q = 0; q < n2; ++q) inv2[q] = iso_invariant(t2.label(q));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<IsoMap>> rel;
  for (std::size_t q1 = 0; q1 < n1; ++q1) {
    for (std::size_t q2 = 0; q2 < n2; ++q2) {
      if (inv1[q1] != inv2[q2]) continue;
      std::vector<IsoMap> hs;
      enumerate_isomorphisms(t1.label(q1), t2.label(q2), {}, [&](const IsoMap& h) {
        hs.push_back(h);
        return true;
      });
      if (!hs.empty()) {
        res.seed_size += hs.size();
        rel.emplace(std::make_pair(q1, q2), std::move(hs));
      }
    }
  }

  // Some g in R(b1,b2) combines with h; the condition is symmetric, so it serves
  // both the forth and the back clause.
  auto matched = [&](std::size_t a1, const IsoMap& h, std::size_t a2, std::size_t b1, std::size_t b2) {
    auto it = rel.find({b1, b2});
    if (it == rel.end()) return false;
    for (const IsoMap& g : it->second) {
      if (compatible(h, t1.label(a1), t2.label(a2), g, t1.label(b1))) return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    ++res.rounds;
    for (auto it = rel.begin(); it != rel.end();) {
      const auto [q1, q2] = it->first;
      std::vector<IsoMap> keep;
      for (const IsoMap& h : it->second) {
        bool ok = true;
        for (std::size_t r1 : t1.successors(q1)) {
          bool found = false;
          for (std::size_t r2 : t2.successors(q2)) {
            if (matched(q1, h, q2, r1, r2)) {
              found = true;
              break;
            }
          }
          if (!found) {
            ok = false;
            break;
          }
        }
        if (ok) {
          for (std::size_t r2 : t2.successors(q2)) {
            bool found = false;
            for (std::size_t r1 : t1.successors(q1)) {
              if (matched(q1, h, q2, r1, r2)) {
                found = true;
                break;
              }
            }
            if (!found) {
              ok = false;
              break;
            }
          }
        }
        if (ok) keep.push_back(h);
      }
      if (keep.size() != it->second.size()) changed = true;
      if (keep.empty()) {
        it = rel.erase(it);
      } else {
        it->second = std::move(keep);
        ++it;
      }
    }
  }

  res.bisimilar = rel.count({t1.initial(), t2.initial()}) > 0;
  if (res.bisimilar) {
    for (const auto& [key, hs] : rel) {
      for (const IsoMap& h : hs) res.relation.push_back({key.first, h, key.second});
    }
  }
  return res;
}

}  // namespace bsc
