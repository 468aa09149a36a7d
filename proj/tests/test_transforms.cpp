#include <doctest.h>

#include "atm_oracle.hpp"
#include "bsc/abstraction.hpp"
#include "bsc/atm.hpp"
#include "bsc/bisim.hpp"
#include "bsc/error.hpp"
#include "bsc/isomorphism.hpp"
#include "bsc/transforms.hpp"
#include "helpers.hpp"

using namespace bsc;
using namespace bsc::testing;

namespace {

ActionInstance act(const Theory& t, const char* name, std::initializer_list<std::string_view> args) {
  ActionInstance a{*t.action_index(intern(name)), {}};
  for (auto s : args) a.args.push_back(obj(s));
  return a;
}

std::size_t fluent(const Theory& t, const std::string& name) { return *t.fluent_index(intern(name)); }

// Replays a prefix from the initial situation; returns the last state.
Interpretation replay(const Theory& t, const std::vector<ActionInstance>& prefix, std::size_t b) {
  Interpretation i = t.initial_interpretation();
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    REQUIRE(state_within_bound(i, b));
    REQUIRE(poss(i, prefix[k], t));
    i = apply_ssa(i, prefix[k], t);
  }
  return i;
}

bool isomorphic_to_one_of(const Interpretation& i, const std::vector<Interpretation>& xs) {
  for (const Interpretation& x : xs) {
    if (find_isomorphism(i, x)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("blocking the photo theory") {
  Theory photo = load("photo");
  Theory blocked = blocking_transform(photo, 3);
  CHECK(blocked.fluents.size() == photo.fluents.size());
  Interpretation three = state(photo, {{"PhotoStored", tup({"#0"})}, {"PhotoStored", tup({"#1"})}, {"PhotoStored", tup({"#2"})}});
  CHECK(poss(three, act(photo, "takePhoto", {"#7"}), photo));
  CHECK_FALSE(poss(three, act(blocked, "takePhoto", {"#7"}), blocked));
  CHECK(poss(three, act(blocked, "takePhoto", {"#1"}), blocked));
  CHECK(poss(three, act(blocked, "deletePhoto", {"#1"}), blocked));

  AbstractionResult abs = build_abstract_ts(blocked, 3);
  std::size_t most = 0;
  for (const Interpretation& i : abs.ts.labels()) most = std::max(most, i.relation(0).size());
  CHECK(most == 3);
  CHECK(check_bounded(blocked, 3).bounded);

  // b = 0 switches off every action that adds a tuple.
  Theory zero = blocking_transform(photo, 0);
  CHECK_FALSE(poss(photo.initial_interpretation(), act(zero, "takePhoto", {"#0"}), zero));
  Theory idle = parse_theory("theory idle\nfluent P/1\naction noop() poss: true\nssa P(x): P(x)\ninit\n");
  AbstractionResult ia = build_abstract_ts(blocking_transform(idle, 0), 0);
  CHECK(ia.ts.num_states() == 1);
  CHECK(ia.ts.has_transition(0, 0));
}

TEST_CASE("blocking a bounded theory keeps its behavior") {
  for (auto [name, b] : {std::pair{"warehouse_k1", 2}, std::pair{"warehouse_k3", 4}, std::pair{"blocks", 2}}) {
    Theory t = load(name);
    AbstractionResult plain = build_abstract_ts(t, b);
    AbstractionResult blocked = build_abstract_ts(blocking_transform(t, b), b);
    CAPTURE(name);
    CHECK(plain.ts.num_states() == blocked.ts.num_states());
    CHECK(is_bisimilar(plain.ts, blocked.ts).bisimilar);
  }
}

TEST_CASE("fading axioms") {
  Theory c = load("isclean");
  Theory f = fading_transform(c, 2, 3);
  REQUIRE(f.fluents.size() == 3);
  CHECK(faded_name(intern("IsClean"), 0) == "IsClean_0");
  for (std::size_t i = 0; i <= 2; ++i) CHECK(f.fluent_index(intern(faded_name(intern("IsClean"), i))).has_value());
  CHECK(validate_theory(f).empty());

  const std::size_t f0 = fluent(f, "IsClean_0"), f1 = fluent(f, "IsClean_1"), f2 = fluent(f, "IsClean_2");
  Interpretation i = f.initial_interpretation();
  i = apply_ssa(i, act(f, "clean", {"#0"}), f);
  CHECK(i.relation(f2) == Relation({tup({"#0"})}));
  CHECK(i.relation(f1).empty());
  i = apply_ssa(i, act(f, "wait", {}), f);
  CHECK(i.relation(f2).empty());
  CHECK(i.relation(f1) == Relation({tup({"#0"})}));
  i = apply_ssa(i, act(f, "clean", {"#1"}), f);
  CHECK(i.relation(f2) == Relation({tup({"#1"})}));
  CHECK(i.relation(f0) == Relation({tup({"#0"})}));
  // Using a room removes it at every level.
  Interpretation used = apply_ssa(i, act(f, "use", {"#1"}), f);
  CHECK(used.total_tuples() == 0);
  i = apply_ssa(i, act(f, "wait", {}), f);
  CHECK(i.relation(f0).empty());
  CHECK(i.relation(f1) == Relation({tup({"#1"})}));

  // Re-cleaning refreshes the fact to the top level.
  Interpretation again = apply_ssa(i, act(f, "clean", {"#1"}), f);
  CHECK(again.relation(f2) == Relation({tup({"#1"})}));
  CHECK(again.relation(f1).empty());
}

TEST_CASE("fading with length zero") {
  Theory c = load("isclean");
  Theory f = fading_transform(c, 0, 3);
  REQUIRE(f.fluents.size() == 1);
  Interpretation i = apply_ssa(f.initial_interpretation(), act(f, "clean", {"#0"}), f);
  CHECK(i.relation(0).size() == 1);
  CHECK(apply_ssa(i, act(f, "clean", {"#0"}), f).relation(0).size() == 1);
  CHECK(apply_ssa(i, act(f, "wait", {}), f).relation(0).empty());
}

TEST_CASE("fading rewrites preconditions and the initial situation") {
  Theory t = parse_theory(
      "theory m\nconstants A\nfluent P/1\naction on(x) poss: true\naction need(x) poss: P(x)\n"
      "ssa P(x): act = on(x) | P(x) & not act = need(x)\ninit P(A)\n");
  Theory f = fading_transform(t, 1, 2);
  CHECK(f.initial_interpretation().relation(fluent(f, "P_1")) == Relation({tup({"A"})}));
  CHECK(f.initial_interpretation().relation(fluent(f, "P_0")).empty());
  CHECK(poss(f.initial_interpretation(), act(f, "need", {"A"}), f));
  Interpretation i = apply_ssa(f.initial_interpretation(), act(f, "on", {"#3"}), f);
  CHECK(poss(i, act(f, "need", {"A"}), f));
  i = apply_ssa(i, act(f, "on", {"#3"}), f);
  CHECK_FALSE(poss(i, act(f, "need", {"A"}), f));

  CHECK_THROWS_AS(fading_transform(parse_theory("theory b\nfluent P/1\naction a(x) poss: true\nssa P(x): not P(x)\ninit\n"),
                                   1, 2),
                  Error);
  CHECK_THROWS_AS(fading_transform(parse_theory("theory c\nconstants P_0\nfluent P/1\naction a(x) poss: true\n"
                                                "ssa P(x): act = a(x) | P(x)\ninit\n"),
                                   1, 2),
                  Error);
}

TEST_CASE("faded theories are bounded") {
  Theory c = load("isclean");
  for (auto [ell, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
    CAPTURE(ell);
    CHECK(check_bounded(fading_transform(c, ell, b), b).bounded);
  }
  CHECK_FALSE(check_bounded(c, 3).bounded);
}

TEST_CASE("boundedness check theory") {
  Theory w = load("warehouse_k3");
  Theory d = boundedness_check_theory(w, 4);
  REQUIRE(d.fluents.size() == 2);
  CHECK(symbol_name(d.fluents[0].name) == "At'");
  CHECK(symbol_name(d.fluents[1].name) == "IsLoc'");
  CHECK(primed(intern("At")) == intern("At'"));
  CHECK(validate_theory(d).empty());
  AbstractionResult abs = build_abstract_ts(d, 4);
  CHECK(abs.ts.num_states() > 1);
  CHECK_THROWS_AS(boundedness_check_theory(w, 3), BoundViolation);

  // In the photo D′ a state where one more photo would cross the bound has no moves.
  Theory photo = load("photo");
  Theory dp = boundedness_check_theory(photo, 2);
  AbstractionResult pa = build_abstract_ts(dp, 2);
  Formula nob = next_orig_bounded(photo, 2);
  bool blocked_state = false;
  for (std::size_t q = 0; q < pa.ts.num_states(); ++q) {
    const Interpretation& i = pa.ts.label(q);
    // Primed fluents sit at the same positions as the originals.
    if (!eval_fo(i, photo.signature(), {}, nob)) {
      CHECK(pa.ts.successors(q).empty());
      CHECK(i.relation(0).size() == 2);
      blocked_state = true;
    }
  }
  CHECK(blocked_state);
}

TEST_CASE("check_bounded examples") {
  Theory w = load("warehouse_k3");
  BoundednessVerdict ok = check_bounded(w, 4);
  CHECK(ok.bounded);
  CHECK(ok.counter_prefix.empty());
  CHECK(ok.states > 0);

  // IsLoc alone holds four tuples.
  BoundednessVerdict small = check_bounded(w, 3);
  CHECK_FALSE(small.bounded);
  CHECK(small.counter_prefix.empty());
  CHECK_FALSE(state_within_bound(w.initial_interpretation(), 3));

  Theory photo = load("photo");
  for (std::size_t b : {1, 3, 5}) {
    CAPTURE(b);
    BoundednessVerdict v = check_bounded(photo, b);
    REQUIRE_FALSE(v.bounded);
    CHECK(v.counter_prefix.size() == b + 1);
    CHECK(v.counter_labels.size() == v.counter_prefix.size());
    CHECK_FALSE(state_within_bound(replay(photo, v.counter_prefix, b), b));
  }

  CHECK(check_bounded(load("blocks"), 2).bounded);
  CHECK(check_bounded(load("warehouse_k1"), 2).bounded);
  CHECK_THROWS_AS(check_bounded(load("warehouse_incomplete"), 4), Error);

  Theory uncapped = parse_theory("theory u\nfluent P/1\naction a() poss: true\nssa P(x): act = a() | P(x)\ninit\n");
  BoundednessVerdict uv = check_bounded(uncapped, 2);
  CHECK_FALSE(uv.bounded);
  CHECK(uv.counter_prefix.size() == 1);
}

TEST_CASE("counterexample prefixes are executable from the initial situation") {
  Theory c = load("isclean");
  BoundednessVerdict v = check_bounded(c, 2);
  REQUIRE_FALSE(v.bounded);
  CHECK(v.counter_prefix.size() == 3);
  CHECK_FALSE(state_within_bound(replay(c, v.counter_prefix, 2), 2));

  // A theory that needs a few moves before it can grow.
  Theory slow = parse_theory(
      "theory slow\nconstants A\nfluent Go/0\nfluent Step/1\nfluent P/1\n"
      "action tick(x) poss: (not exists y. Step(y)) & not Go()\n"
      "action start() poss: exists y. Step(y)\n"
      "action add(x) poss: Go()\n"
      "ssa Step(x): act = tick(x) | Step(x) & not act = start()\n"
      "ssa Go(): act = start() | Go()\n"
      "ssa P(x): act = add(x) | P(x)\ninit\n");
  BoundednessVerdict sv = check_bounded(slow, 1);
  REQUIRE_FALSE(sv.bounded);
  CHECK(sv.counter_prefix.size() == 4);
  CHECK_FALSE(state_within_bound(replay(slow, sv.counter_prefix, 1), 1));
}

TEST_CASE("initial model enumeration examples") {
  Theory empty = parse_theory(
      "theory e\nfluent P/1\nfluent Q/2\naction a() poss: true\nssa P(x): P(x)\nssa Q(x, y): Q(x, y)\n"
      "init-constraints not exists x. P(x); not exists x, y. Q(x, y)\n");
  InitEnumeration e = enumerate_initial_models(empty, 2);
  CHECK(e.interpretations.size() == 1);
  CHECK(e.interpretations[0].total_tuples() == 0);
  CHECK(e.objects == 6);
  CHECK_FALSE(e.truncated);

  Theory one = parse_theory("theory o\nfluent P/1\naction a() poss: true\nssa P(x): P(x)\ninit-constraints exists x. P(x)\n");
  InitEnumeration o = enumerate_initial_models(one, 1);
  REQUIRE(o.interpretations.size() == 1);
  CHECK(o.interpretations[0].relation(0).size() == 1);

  Theory none = parse_theory("theory n\nfluent P/1\naction a() poss: true\nssa P(x): P(x)\ninit-constraints false\n");
  CHECK(enumerate_initial_models(none, 2).interpretations.empty());

  InitEnumeration cut = enumerate_initial_models(load("warehouse_incomplete"), 4, 1);
  CHECK(cut.truncated);
}

TEST_CASE("enumeration agrees with brute force") {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"theory a\nconstants A\nfluent P/1\naction n() poss: true\nssa P(x): P(x)\ninit-constraints true\n", 2},
      {"theory b\nfluent E/2\naction n() poss: true\nssa E(x, y): E(x, y)\ninit-constraints true\n", 1},
      {"theory c\nconstants A\nfluent P/1\nfluent Q/1\naction n() poss: true\nssa P(x): P(x)\nssa Q(x): Q(x)\n"
       "init-constraints forall x. P(x) implies Q(x)\n",
       1},
      {"theory d\nconstants A\nfluent P/1\nfluent Q/1\naction n() poss: true\nssa P(x): P(x)\nssa Q(x): Q(x)\n"
       "init-constraints exists x. P(x) & not Q(x) & x != A\n",
       1},
      {"theory e\nfluent P/1\naction n() poss: true\nssa P(x): P(x)\n"
       "init-constraints count(x | P(x)) < 3; exists x. P(x)\n",
       3},
      {"theory f\nconstants A, B\nfluent R/1\naction n() poss: true\nssa R(x): R(x)\n"
       "init-constraints R(A) | exists y. R(y) & y != B\n",
       1},
  };
  for (const auto& [text, b] : cases) {
    Theory t = parse_theory(text);
    CAPTURE(t.name);
    InitEnumeration fast = enumerate_initial_models(t, b);
    InitEnumeration slow = enumerate_initial_models_brute(t, b);
    REQUIRE(fast.objects <= 3);
    CHECK_FALSE(fast.truncated);
    CHECK(fast.interpretations.size() == slow.interpretations.size());
    for (const Interpretation& i : slow.interpretations) CHECK(isomorphic_to_one_of(i, fast.interpretations));
    for (std::size_t a = 0; a < fast.interpretations.size(); ++a) {
      CHECK(state_within_bound(fast.interpretations[a], b));
      for (const Formula& c : std::get<ConstraintInit>(t.init).constraints)
        CHECK(eval_fo(fast.interpretations[a], t.signature(), {}, c));
      for (std::size_t k = a + 1; k < fast.interpretations.size(); ++k)
        CHECK_FALSE(find_isomorphism(fast.interpretations[a], fast.interpretations[k]));
    }
  }
}

TEST_CASE("verification under incomplete information") {
  Theory w = load("warehouse_incomplete");
  MuFormula dock = parse_formula("AG ((exists x. At(x, ShipDock)) implies dia(not exists x. At(x, ShipDock)))", w);
  IncompleteVerdict v = verify_incomplete(w, dock, 4);
  CHECK(v.holds);
  REQUIRE(v.cells.interpretations.size() == 2);
  CHECK(v.cell_holds == std::vector<bool>{true, true});

  MuFormula some = parse_formula("exists x. exists l. At(x, l)", w);
  IncompleteVerdict s = verify_incomplete(w, some, 4);
  CHECK_FALSE(s.holds);
  REQUIRE(s.failing_cell.has_value());
  CHECK(v.cells.interpretations[*s.failing_cell].relation(0).empty());

  // Cells checked one by one.
  for (std::size_t k = 0; k < s.cells.interpretations.size(); ++k) {
    Theory cell = with_initial(w, s.cells.interpretations[k]);
    CHECK(check(build_abstract_ts(cell, 4).ts, some).holds == s.cell_holds[k]);
  }

  CHECK_THROWS_AS(verify_incomplete(w, dock, 4, {}, 1), Error);
}

TEST_CASE("a single empty cell gives the complete-information verdicts") {
  Theory w = load("warehouse_k3");
  std::string text = to_dsl(w);
  std::string constrained = text.substr(0, text.find("\ninit")) +
                            "\ninit-constraints forall l. IsLoc(l) iff (l = ShipDock | l = SL1 | l = SL2 | l = SL3);"
                            " not exists x. exists l. At(x, l)\n";
  Theory c = parse_theory(constrained);
  AbstractionResult full = build_abstract_ts(w, 4);
  for (const std::string& f : warehouse_formulas()) {
    CAPTURE(f);
    IncompleteVerdict v = verify_incomplete(c, parse_formula(f, c), 4);
    CHECK(v.cells.interpretations.size() == 1);
    CHECK(v.holds == check(full.ts, parse_formula(f, w)).holds);
  }
}

TEST_CASE("atm machine file errors") {
  CHECK_THROWS_AS(parse_atm("state q0 or\ntrans q0 0 q9 0 R\nstart q0\n"), ParseError);
  CHECK_THROWS_AS(parse_atm("state q0 or\nstart q1\n"), ParseError);
  CHECK_THROWS_AS(parse_atm("state q0 maybe\nstart q0\n"), ParseError);
  try {
    parse_atm("state q0 or\n\ntrans q0 0 q0 0 X\nstart q0\n", "m.atm");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 3);
  }
  AtmMachine m = load_atm(corpus("atm/contains_one.atm"));
  CHECK(m.states.size() == 3);
  CHECK(m.symbols() == std::vector<std::string>{"0", "1"});
  CHECK_THROWS(atm_theory(m, "0101", 2));
}

TEST_CASE("atm encodings agree with direct simulation") {
  struct Run {
    const char* machine;
    std::vector<std::string> inputs;
    std::size_t ell;
  };
  const std::vector<Run> runs = {
      {"accept_now", {"", "0", "1"}, 1},
      {"or_branch", {"", "0", "1"}, 1},
      {"and_branch", {"0", "1", ""}, 1},
      {"scan_right", {"", "1", "11", "10", "111"}, 2},
      {"loop_left", {"0", "1", "01", ""}, 1},
      {"alternate", {"0", "1", "00", "01", "10"}, 2},
  };
  for (const Run& r : runs) {
    AtmMachine m = load_atm(corpus(std::string("atm/") + r.machine + ".atm"));
    for (const std::string& in : r.inputs) {
      CAPTURE(r.machine);
      CAPTURE(in);
      AtmEncoding enc = atm_theory(m, in, r.ell);
      CHECK(!enc.dsl.empty());
      AbstractionResult abs = build_abstract_ts(enc.theory, *enc.theory.declared_bound);
      CHECK(check(abs.ts, enc.acceptance).holds == atm_oracle_accepts(m, in, r.ell));
    }
  }
  CHECK(atm_oracle_accepts(load_atm(corpus("atm/accept_now.atm")), "", 0));
  CHECK_FALSE(atm_oracle_accepts(load_atm(corpus("atm/loop_left.atm")), "0", 1));
}

TEST_CASE("contains-one machine on every short input") {
  AtmMachine m = load_atm(corpus("atm/contains_one.atm"));
  std::vector<std::string> inputs{""};
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<std::string> next;
    for (const std::string& s : inputs) {
      if (s.size() == len - 1) {
        next.push_back(s + "0");
        next.push_back(s + "1");
      }
    }
    inputs.insert(inputs.end(), next.begin(), next.end());
  }
  REQUIRE(inputs.size() == 15);
  for (const std::string& in : inputs) {
    CAPTURE(in);
    AtmEncoding enc = atm_theory(m, in, 2);
    AbstractionResult abs = build_abstract_ts(enc.theory, *enc.theory.declared_bound);
    const bool expect = in.find('1') != std::string::npos;
    CHECK(atm_oracle_accepts(m, in, 2) == expect);
    CHECK(check(abs.ts, enc.acceptance).holds == expect);
  }
}
