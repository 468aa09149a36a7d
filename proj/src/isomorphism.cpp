#include "bsc/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace bsc {
namespace {

struct Occurrence {
  std::uint32_t fluent;
  const Tuple* tuple;
};

// Per-object incidence data of one interpretation.
struct Prepared {
  const Interpretation* i = nullptr;
  std::vector<ObjectId> objs;  // adom, sorted
  std::vector<std::vector<std::uint16_t>> sig;
  std::vector<std::vector<Occurrence>> occ;

  explicit Prepared(const Interpretation& in) : i(&in), objs(in.adom()) {
    std::size_t slots = 0;
    std::vector<std::size_t> base;
    for (const Relation& r : in.relations()) {
      base.push_back(slots);
      slots += r.empty() ? 0 : r.tuples()[0].size();
    }
    sig.assign(objs.size(), std::vector<std::uint16_t>(slots, 0));
    occ.resize(objs.size());
    for (std::size_t f = 0; f < in.relations().size(); ++f) {
      for (const Tuple& t : in.relation(f)) {
        for (std::size_t p = 0; p < t.size(); ++p) {
          std::size_t k = index(t[p]);
          ++sig[k][base[f] + p];
          if (p == 0 || std::find(t.begin(), t.begin() + p, t[p]) == t.begin() + p)
            occ[k].push_back({static_cast<std::uint32_t>(f), &t});
        }
      }
    }
  }

  std::size_t index(ObjectId o) const {
    return static_cast<std::size_t>(std::lower_bound(objs.begin(), objs.end(), o) - objs.begin());
  }
  bool has(ObjectId o) const { return std::binary_search(objs.begin(), objs.end(), o); }
};

// Slot layouts only agree when both sides have the same relation widths; compare
// signatures on a shared layout by relation sizes first.
bool same_shape(const Interpretation& a, const Interpretation& b) {
  if (a.relations().size() != b.relations().size() || a.constants().size() != b.constants().size()) return false;
  if (a.adom().size() != b.adom().size()) return false;
  for (std::size_t f = 0; f < a.relations().size(); ++f) {
    if (a.relation(f).size() != b.relation(f).size()) return false;
  }
  return true;
}

}  // namespace

std::size_t enumerate_isomorphisms(const Interpretation& a, const Interpretation& b, const IsoConstraints& c,
                                   const std::function<bool(const IsoMap&)>& fn) {
  if (!same_shape(a, b)) return 0;
  Prepared pa(a), pb(b);
  const std::size_t n = pa.objs.size();
  if (n > 0 && pa.sig[0].size() != pb.sig[0].size()) return 0;

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> forced(n, kNone);
  std::vector<char> target_forced(n, 0);
  auto force = [&](ObjectId s, ObjectId t) {
    if (!pa.has(s)) return true;
    if (!pb.has(t)) return false;
    std::size_t si = pa.index(s), ti = pb.index(t);
    if (forced[si] != kNone) return forced[si] == ti;
    if (target_forced[ti]) return false;
    forced[si] = ti;
    target_forced[ti] = 1;
    return true;
  };
  for (std::size_t k = 0; k < a.constants().size(); ++k) {
    if (!force(a.constant(k), b.constant(k))) return 0;
  }
  for (const auto& [s, t] : c.forced) {
    if (!force(s, t)) return 0;
  }

  // Candidate targets per source.
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (forced[s] != kNone) {
      if (pa.sig[s] != pb.sig[forced[s]]) return 0;
      cand[s] = {forced[s]};
      continue;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (target_forced[t] || pa.sig[s] != pb.sig[t]) continue;
      if (std::binary_search(c.forbidden_targets.begin(), c.forbidden_targets.end(), pb.objs[t])) continue;
      cand[s].push_back(t);
    }
    if (cand[s].empty()) return 0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (cand[x].size() != cand[y].size()) return cand[x].size() < cand[y].size();
    return pa.occ[x].size() > pa.occ[y].size();
  });

  std::vector<std::size_t> h(n, kNone);
  std::vector<char> used(n, 0);
  std::size_t reported = 0;
  bool stop = false;

  auto consistent = [&](std::size_t s) {
    for (const Occurrence& o : pa.occ[s]) {
      Tuple img;
      bool complete = true;
      for (ObjectId x : *o.tuple) {
        std::size_t xi = pa.index(x);
        if (h[xi] == kNone) {
          complete = false;
          break;
        }
        img.push_back(pb.objs[h[xi]]);
      }
      if (complete && !b.relation(o.fluent).contains(img)) return false;
    }
    return true;
  };

  auto rec = [&](auto& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == n) {
      std::vector<std::pair<ObjectId, ObjectId>> pairs;
      pairs.reserve(n);
      for (std::size_t s = 0; s < n; ++s) pairs.emplace_back(pa.objs[s], pb.objs[h[s]]);
      ++reported;
      if (!fn(IsoMap(std::move(pairs)))) stop = true;
      return;
    }
    std::size_t s = order[depth];
    for (std::size_t t : cand[s]) {
      if (used[t]) continue;
      h[s] = t;
      used[t] = 1;
      if (consistent(s)) self(self, depth + 1);
      used[t] = 0;
      h[s] = kNone;
      if (stop) return;
    }
  };
  rec(rec, 0);
  return reported;
}

std::optional<IsoMap> find_isomorphism(const Interpretation& a, const Interpretation& b, const IsoConstraints& c) {
  std::optional<IsoMap> out;
  enumerate_isomorphisms(a, b, c, [&](const IsoMap& h) {
    out = h;
    return false;
  });
  return out;
}

std::optional<IsoMap> find_isomorphism_fixing(const Interpretation& a, const Interpretation& b,
                                              const std::vector<ObjectId>& fix) {
  IsoConstraints c;
  for (ObjectId d : fix) {
    if (a.in_adom(d)) c.forced.emplace_back(d, d);
  }
  c.forbidden_targets = fix;
  std::sort(c.forbidden_targets.begin(), c.forbidden_targets.end());
  return find_isomorphism(a, b, c);
}

std::size_t iso_invariant(const Interpretation& i) {
  Prepared p(i);
  std::vector<std::size_t> hs;
  for (std::size_t k = 0; k < p.objs.size(); ++k) {
    std::size_t h = 0;
    for (std::uint16_t x : p.sig[k]) hash_combine(h, x);
    for (std::size_t c = 0; c < i.constants().size(); ++c) {
      if (i.constant(c) == p.objs[k]) hash_combine(h, 0x1000 + c);
    }
    hs.push_back(h);
  }
  std::sort(hs.begin(), hs.end());
  std::size_t h = p.objs.size();
  for (const Relation& r : i.relations()) hash_combine(h, r.size());
  for (std::size_t x : hs) hash_combine(h, x);
  return h;
}

}  // namespace bsc
