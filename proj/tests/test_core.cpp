#include <doctest.h>

#include "bsc/abstraction.hpp"
#include "bsc/fo_eval.hpp"
#include "bsc/mu_formula.hpp"
#include "helpers.hpp"

using namespace bsc;
using namespace bsc::testing;

TEST_CASE("object identity and fresh namespace") {
  CHECK(ObjectId::named("ShipDock") == ObjectId::named("ShipDock"));
  CHECK(ObjectId::named("ShipDock") != ObjectId::named("SL1"));
  for (std::uint32_t n = 0; n < 50; ++n) {
    CHECK(ObjectId::fresh(n) != ObjectId::named("ShipDock"));
    CHECK(ObjectId::fresh(n).str() == "#" + std::to_string(n));
    CHECK(ObjectId::parse("#" + std::to_string(n)) == ObjectId::fresh(n));
    CHECK(ObjectId::named("A") < ObjectId::fresh(n));
  }
  CHECK(ObjectId::fresh(2) < ObjectId::fresh(10));
}

TEST_CASE("active domain") {
  Theory t = parse_theory("theory t\nconstants ShipDock\nfluent At/2\naction a() poss: true\nssa At(x,l): At(x,l)\ninit\n");
  const ObjectId o0 = ObjectId::named("ShipDock");
  Interpretation empty = state(t, {});
  CHECK(empty.adom() == std::vector<ObjectId>{o0});
  Interpretation one = state(t, {{"At", Tuple{obj("#1"), o0}}});
  CHECK(one.adom() == std::vector<ObjectId>{o0, obj("#1")});

  Theory w = load("warehouse_k3");
  std::vector<ObjectId> expect;
  for (const char* s : {"ShipDock", "SL1", "SL2", "SL3"}) expect.push_back(ObjectId::named(s));
  std::sort(expect.begin(), expect.end());
  CHECK(w.initial_interpretation().adom() == expect);
}

TEST_CASE("active domain size respects b-prime") {
  Theory w = load("warehouse_k3");
  std::mt19937 rng(7);
  std::vector<ObjectId> objs = w.constant_objects();
  for (std::uint32_t k = 0; k < 30; ++k) objs.push_back(ObjectId::fresh(k));
  for (std::size_t b = 0; b <= 4; ++b) {
    const std::size_t bprime = adom_bounds(w, b).bprime;
    for (int rep = 0; rep < 50; ++rep) {
      Interpretation i = random_state(w, objs, b, rng);
      REQUIRE(state_within_bound(i, b));
      CHECK(i.adom().size() <= bprime);
    }
  }
}

TEST_CASE("theory validation") {
  Theory w = load("warehouse_k3");
  CHECK(validate_theory(w).empty());

  Theory dup = w;
  dup.ssas.push_back(dup.ssas[0]);
  auto ds = validate_theory(dup);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message == "duplicate SSA: At");

  Theory esc = w;
  esc.actions[0].poss = fo::And(esc.actions[0].poss, fo::Atom(intern("IsLoc"), {Term::var("y")}));
  ds = validate_theory(esc);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message == "free variable y escapes Poss(move)");
}

TEST_CASE("monotonicity check on the AST") {
  Symbol z = intern("Z");
  Formula phi = fo::Atom(intern("P"), {Term::constant("A")});
  CHECK(monotonicity_error(mu::Mu(z, mu::Not(mu::Var(z)))).has_value());
  CHECK_FALSE(monotonicity_error(mu::Mu(z, mu::Or(mu::Fo(phi), mu::Dia(mu::Var(z))))).has_value());
  CHECK_FALSE(monotonicity_error(mu::Mu(z, mu::Not(mu::Not(mu::Var(z))))).has_value());
}

TEST_CASE("count nodes expand to an equivalent formula") {
  Theory w = load("warehouse_k3");
  FormulaGen gen(w, 11);
  std::vector<ObjectId> objs = w.constant_objects();
  for (std::uint32_t k = 0; k < 3; ++k) objs.push_back(ObjectId::fresh(k));
  Symbol x = intern("x"), l = intern("l");
  Formula at = fo::Atom(intern("At"), {Term::var(x), Term::var(l)});
  for (std::size_t b = 0; b <= 3; ++b) {
    Formula c = fo::Count({x, l}, at, b);
    Formula e = expand_counts(c);
    for (int rep = 0; rep < 30; ++rep) {
      Interpretation i = random_state(w, objs, 4, gen.rng());
      CHECK(eval_fo(i, w.signature(), {}, c) == eval_fo(i, w.signature(), {}, e));
      CHECK(eval_fo(i, w.signature(), {}, c) == (i.relation(0).size() < b));
    }
  }
}

TEST_CASE("transition system invariants") {
  Theory w = load("warehouse_k1");
  FiniteTS ts(w.signature());
  std::size_t a = ts.add_state(w.initial_interpretation());
  std::size_t b = ts.add_state(state(w, {{"IsLoc", tup({"ShipDock"})}, {"At", tup({"#0", "ShipDock"})}}));
  ts.set_initial(a);
  ts.add_transition(a, b);
  ts.add_transition(a, b);
  CHECK(ts.num_transitions() == 1);
  CHECK(ts.validate().empty());
  CHECK(ts.has_transition(a, b));
  CHECK_FALSE(ts.has_transition(b, a));

  IsoMap h({{obj("#0"), obj("#5")}, {obj("#1"), obj("#2")}});
  CHECK(h.injective());
  CHECK(*h.inverse().at(obj("#5")) == obj("#0"));
  CHECK(h.apply(obj("#9")) == obj("#9"));
  CHECK_FALSE(IsoMap({{obj("#0"), obj("#5")}, {obj("#1"), obj("#5")}}).injective());
}
