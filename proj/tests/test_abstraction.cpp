#include <doctest.h>

#include "bsc/abstraction.hpp"
#include "bsc/error.hpp"
#include "bsc/isomorphism.hpp"
#include "bsc/serialize.hpp"
#include "helpers.hpp"

using namespace bsc;
using namespace bsc::testing;

namespace {

// Number of isomorphism classes (constants fixed) among the states of a system.
std::size_t iso_classes(const FiniteTS& ts) {
  std::vector<std::size_t> reps;
  for (std::size_t q = 0; q < ts.num_states(); ++q) {
    bool found = false;
    for (std::size_t r : reps) {
      if (find_isomorphism(ts.label(q), ts.label(r))) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(q);
  }
  return reps.size();
}

}  // namespace

TEST_CASE("adom bound examples") {
  AdomBounds w = adom_bounds(load("warehouse_k3"), 4);
  CHECK(w.bprime == 16);
  CHECK(w.cap == 35);

  Theory empty = parse_theory("theory e\naction a() poss: true\ninit\n");
  AdomBounds e = adom_bounds(empty, 5);
  CHECK(e.bprime == 0);
  CHECK(e.cap == 0);

  Theory one = parse_theory("theory o\nfluent P/1\naction a(x) poss: true\nssa P(x): P(x)\ninit\n");
  AdomBounds o = adom_bounds(one, 1);
  CHECK(o.bprime == 1);
  CHECK(o.cap == 3);
}

TEST_CASE("object pool choice") {
  Theory w = load("warehouse_k1");
  Interpretation init = w.initial_interpretation();
  CHECK(choose_object_pool(init, init.adom(), 3) == std::vector<ObjectId>{obj("#0"), obj("#1"), obj("#2")});
  CHECK(choose_object_pool(init, init.adom(), 0).empty());

  std::vector<ObjectId> adom_q = init.adom();
  for (const char* s : {"#0", "#1", "#2"}) adom_q.push_back(obj(s));
  std::sort(adom_q.begin(), adom_q.end());
  Interpretation s = state(w, {{"At", tup({"#1", "SL1"})}, {"IsLoc", tup({"ShipDock"})}, {"IsLoc", tup({"SL1"})}});
  CHECK(choose_object_pool(s, adom_q, 3) == std::vector<ObjectId>{obj("#0"), obj("#2"), obj("#3")});
}

TEST_CASE("matching with a fixed object set") {
  Theory w = load("warehouse_k1");
  FiniteTS ts(w.signature());
  Interpretation a = state(w, {{"At", tup({"#0", "ShipDock"})}, {"At", tup({"#1", "SL1"})}});
  ts.add_state(w.initial_interpretation());
  ts.add_state(a);

  auto m = find_match(a, ts, a.adom());
  REQUIRE(m.has_value());
  CHECK(m->first == 1);
  for (auto [s, d] : m->second.pairs()) CHECK(s == d);

  Interpretation swapped = state(w, {{"At", tup({"#1", "ShipDock"})}, {"At", tup({"#0", "SL1"})}});
  auto sw = find_match(swapped, ts, w.constant_objects());
  REQUIRE(sw.has_value());
  CHECK(sw->first == 1);
  CHECK(sw->second.apply(obj("#0")) == obj("#1"));
  CHECK(sw->second.apply(obj("#1")) == obj("#0"));
  // Fixing #0 rules the swap out.
  std::vector<ObjectId> fix = w.constant_objects();
  fix.push_back(obj("#0"));
  std::sort(fix.begin(), fix.end());
  CHECK_FALSE(find_match(swapped, ts, fix).has_value());

  Interpretation more = state(w, {{"At", tup({"#0", "ShipDock"})}});
  CHECK_FALSE(find_match(more, ts, w.constant_objects()).has_value());
}

TEST_CASE("noop theory folds into one state") {
  Theory t = load("noop");
  AbstractionResult abs = build_abstract_ts(t, 1);
  CHECK(abs.ts.num_states() == 1);
  CHECK(abs.ts.num_transitions() == 1);
  CHECK(abs.ts.has_transition(0, 0));
  FiniteTS conc = build_concrete_ts(t, t.initial_interpretation(), make_pool(t, 3));
  CHECK(conc.num_states() == 1);
  CHECK(conc.has_transition(0, 0));
}

TEST_CASE("warehouse k1 matches the isomorphism classes of the concrete system") {
  Theory w = load("warehouse_k1");
  AbstractionResult abs = build_abstract_ts(w, 2);
  CHECK(abs.ts.validate().empty());
  FiniteTS conc = build_concrete_ts(w, w.initial_interpretation(), make_pool(w, abs.bounds.cap));
  CHECK(iso_classes(abs.ts) == iso_classes(conc));
  CHECK(abs.ts.num_states() == iso_classes(conc));
}

TEST_CASE("bound and guard violations") {
  Theory w = load("warehouse_k3");
  try {
    build_abstract_ts(w, 3);
    FAIL("expected a bound violation");
  } catch (const BoundViolation& e) {
    // IsLoc alone holds four tuples.
    CHECK(e.trace().empty());
  }

  Theory k1 = load("warehouse_k1");
  try {
    build_abstract_ts(k1, 1);
    FAIL("expected a bound violation");
  } catch (const BoundViolation& e) {
    CHECK(e.trace().empty());
  }
  Theory photo = load("photo");
  try {
    build_abstract_ts(photo, 2);
    FAIL("expected a bound violation");
  } catch (const BoundViolation& e) {
    CHECK(e.trace().size() == 3);
  }

  AbstractionConfig small;
  small.max_states = 3;
  CHECK_THROWS_AS(build_abstract_ts(w, 4, small), GuardExceeded);

  CHECK_THROWS_AS(build_concrete_ts(k1, k1.initial_interpretation(), {obj("SL1")}), Error);
}

TEST_CASE("envelope and per-state bound on the corpus") {
  for (const char* name : {"warehouse_k1", "warehouse_k3", "blocks", "noop"}) {
    Theory t = load(name);
    const std::size_t b = *t.declared_bound;
    AbstractionResult abs = build_abstract_ts(t, b);
    CAPTURE(name);
    CHECK(abs.ts.adom_union().size() == abs.adom_size);
    CHECK(abs.adom_size <= abs.bounds.cap);
    for (const Interpretation& i : abs.ts.labels()) {
      CHECK(state_within_bound(i, b));
      CHECK(i.adom().size() <= abs.bounds.bprime);
    }
  }
}

TEST_CASE("construction is deterministic") {
  for (const char* name : {"warehouse_k1", "blocks"}) {
    Theory t = load(name);
    AbstractionResult a = build_abstract_ts(t, *t.declared_bound);
    AbstractionResult b = build_abstract_ts(t, *t.declared_bound);
    CHECK(a.ts == b.ts);
    CHECK(ts_to_json(a.ts) == ts_to_json(b.ts));
    CHECK(a.edge_label == b.edge_label);
  }
}

TEST_CASE("every transition replays concretely and folds by an identity on the source") {
  for (const char* name : {"warehouse_k1", "warehouse_k3", "blocks"}) {
    Theory t = load(name);
    AbstractionResult abs = build_abstract_ts(t, *t.declared_bound);
    CAPTURE(name);
    for (const auto& [edge, a] : abs.edge_action) {
      const Interpretation& src = abs.ts.label(edge.first);
      REQUIRE(poss(src, a, t));
      Interpretation next = apply_ssa(src, a, t);
      auto h = find_isomorphism_fixing(next, abs.ts.label(edge.second), src.adom());
      REQUIRE(h.has_value());
      for (ObjectId o : src.adom()) {
        if (next.in_adom(o)) CHECK(h->apply(o) == o);
      }
    }
    // Each state has one BFS parent except the initial one.
    CHECK_FALSE(abs.parent[abs.ts.initial()].has_value());
    for (std::size_t q = 0; q < abs.ts.num_states(); ++q) {
      if (q != abs.ts.initial()) CHECK(abs.parent[q].has_value());
      CHECK(abs.path_to(q).size() <= abs.ts.num_states());
    }
  }
}

TEST_CASE("expansion trace") {
  Theory t = load("noop");
  AbstractionConfig cfg;
  std::vector<std::string> lines;
  cfg.trace = [&](const std::string& s) { lines.push_back(s); };
  build_abstract_ts(t, 1, cfg);
  CHECK_FALSE(lines.empty());
}
