#include <doctest.h>

#include "bsc/abstraction.hpp"
#include "bsc/bisim.hpp"
#include "bsc/isomorphism.hpp"
#include "bsc/mucheck.hpp"
#include "helpers.hpp"

using namespace bsc;
using namespace bsc::testing;

namespace {

FiniteTS abstract(const char* name) {
  Theory t = load(name);
  return build_abstract_ts(t, *t.declared_bound).ts;
}

}  // namespace

TEST_CASE("a system is bisimilar to itself") {
  FiniteTS ts = abstract("warehouse_k1");
  BisimResult r = is_bisimilar(ts, ts);
  REQUIRE(r.bisimilar);
  bool identity_at_init = false;
  for (const BisimTriple& tr : r.relation) {
    if (tr.q1 != ts.initial() || tr.q2 != ts.initial()) continue;
    bool id = true;
    for (auto [a, b] : tr.h.pairs()) id = id && a == b;
    identity_at_init = identity_at_init || id;
  }
  CHECK(identity_at_init);
  // Every triple relates isomorphic labels by its map.
  for (const BisimTriple& tr : r.relation) {
    std::unordered_map<ObjectId, ObjectId> m(tr.h.pairs().begin(), tr.h.pairs().end());
    CHECK(ts.label(tr.q1).renamed(m) == ts.label(tr.q2));
    CHECK(tr.h.size() == ts.label(tr.q1).adom().size());
  }
}

TEST_CASE("renamed and shuffled systems are bisimilar") {
  std::mt19937 rng(8);
  for (const char* name : {"warehouse_k1", "blocks", "noop"}) {
    Theory t = load(name);
    FiniteTS ts = abstract(name);
    auto h = random_renaming(ts.adom_union(), t.constant_objects(), 500, rng);
    FiniteTS other = permuted_ts(renamed_ts(ts, h), rng);
    CAPTURE(name);
    CHECK(is_bisimilar(ts, other).bisimilar);
    CHECK(is_bisimilar(ts, unfolded_ts(ts, rng)).bisimilar);
  }
}

TEST_CASE("different tuple counts are never related") {
  Theory t = load("noop");
  FiniteTS a(t.signature()), b(t.signature());
  a.add_state(state(t, {{"P", tup({"A"})}}));
  b.add_state(state(t, {{"P", tup({"A"})}, {"P", tup({"#0"})}}));
  a.add_transition(0, 0);
  b.add_transition(0, 0);
  BisimResult r = is_bisimilar(a, b);
  CHECK_FALSE(r.bisimilar);
  CHECK(r.seed_size == 0);
}

TEST_CASE("object identity along transitions matters") {
  // Both systems move between {P(#0)} and {P(#1)} shaped states, but only the first
  // keeps the same object.
  Theory t = load("noop");
  FiniteTS keep(t.signature()), swap(t.signature());
  keep.add_state(state(t, {{"P", tup({"#0"})}}));
  keep.add_transition(0, 0);
  swap.add_state(state(t, {{"P", tup({"#0"})}}));
  swap.add_state(state(t, {{"P", tup({"#1"})}}));
  swap.add_transition(0, 1);
  swap.add_transition(1, 0);
  CHECK_FALSE(is_bisimilar(keep, swap).bisimilar);
  MuFormula persist = parse_formula("exists x. P(x) and box(P(x))", t);
  CHECK(check(keep, persist).holds);
  CHECK_FALSE(check(swap, persist).holds);

  // Same shape with fresh objects on both sides is fine.
  FiniteTS swap2(t.signature());
  swap2.add_state(state(t, {{"P", tup({"#5"})}}));
  swap2.add_state(state(t, {{"P", tup({"#7"})}}));
  swap2.add_transition(0, 1);
  swap2.add_transition(1, 0);
  CHECK(is_bisimilar(swap, swap2).bisimilar);
}

TEST_CASE("symmetry and transitivity") {
  std::mt19937 rng(21);
  Theory t = load("warehouse_k1");
  FiniteTS a = abstract("warehouse_k1");
  FiniteTS b = unfolded_ts(renamed_ts(a, random_renaming(a.adom_union(), t.constant_objects(), 100, rng)), rng);
  FiniteTS c = permuted_ts(unfolded_ts(b, rng), rng);
  CHECK(is_bisimilar(a, b).bisimilar);
  CHECK(is_bisimilar(b, a).bisimilar);
  CHECK(is_bisimilar(b, c).bisimilar);
  CHECK(is_bisimilar(a, c).bisimilar);

  // A different initial state breaks it in both directions.
  std::size_t other = a.initial();
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (!find_isomorphism(a.label(q), a.label(a.initial()))) {
      other = q;
      break;
    }
  }
  REQUIRE(other != a.initial());
  FiniteTS d = with_initial_state(a, other);
  CHECK_FALSE(is_bisimilar(a, d).bisimilar);
  CHECK_FALSE(is_bisimilar(d, a).bisimilar);
}

TEST_CASE("bisimilar systems satisfy the same formulas") {
  std::mt19937 rng(99);
  Theory t = load("warehouse_k1");
  FiniteTS a = abstract("warehouse_k1");
  for (int rep = 0; rep < 4; ++rep) {
    FiniteTS b = permuted_ts(
        unfolded_ts(renamed_ts(a, random_renaming(a.adom_union(), t.constant_objects(), 200, rng)), rng), rng);
    REQUIRE(is_bisimilar(a, b).bisimilar);
    ModelChecker ma(a), mb(b);
    for (const std::string& text : warehouse_formulas()) {
      CAPTURE(text);
      MuFormula f = parse_formula(text, t);
      CHECK(ma.check(f).holds == mb.check(f).holds);
    }
  }
}

TEST_CASE("abstract and concrete systems are bisimilar") {
  for (const char* name : {"warehouse_k1", "noop", "blocks"}) {
    Theory t = load(name);
    AbstractionResult abs = build_abstract_ts(t, *t.declared_bound);
    FiniteTS conc = build_concrete_ts(t, t.initial_interpretation(), make_pool(t, abs.bounds.cap));
    CAPTURE(name);
    BisimResult r = is_bisimilar(abs.ts, conc);
    CHECK(r.bisimilar);
    CHECK(r.rounds >= 1);
  }
}

TEST_CASE("map compatibility") {
  Theory t = load("noop");
  Interpretation q1 = state(t, {{"P", tup({"#0"})}});
  Interpretation q2 = state(t, {{"P", tup({"#5"})}});
  Interpretation n1 = state(t, {{"P", tup({"#0"})}, {"P", tup({"#1"})}});
  IsoMap h({{obj("A"), obj("A")}, {obj("#0"), obj("#5")}});
  CHECK(compatible(h, q1, q2, IsoMap({{obj("A"), obj("A")}, {obj("#0"), obj("#5")}, {obj("#1"), obj("#6")}}), n1));
  CHECK_FALSE(compatible(h, q1, q2, IsoMap({{obj("A"), obj("A")}, {obj("#0"), obj("#6")}, {obj("#1"), obj("#5")}}), n1));
}
