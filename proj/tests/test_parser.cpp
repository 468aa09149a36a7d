#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace bsc;
using namespace bsc::testing;

namespace {

std::string read_file(const std::string& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> corpus_theories() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(BSC_CORPUS_DIR)) {
    if (e.path().extension() == ".bsc") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParseError parse_error(const std::string& text) {
  try {
    parse_theory(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError("", {});
}

}  // namespace

TEST_CASE("warehouse source parses") {
  Theory t = load("warehouse_k3");
  CHECK(t.name == "warehouse");
  CHECK(t.fluents.size() == 2);
  CHECK(t.actions.size() == 3);
  CHECK(t.constants.size() == 4);
  CHECK(t.ssas.size() == 2);
  CHECK(t.declared_bound == 4);
  CHECK(t.initial_interpretation().relation(1).size() == 4);
}

TEST_CASE("syntax and semantic errors") {
  ParseError e = parse_error("");
  CHECK(e.span().line == 1);
  CHECK(e.span().col == 1);

  e = parse_error("theory t\nfluent At/2\naction a(x) poss: true\nssa At(x, l): At(x, l, x)\ninit\n");
  CHECK(std::string(e.what()).find("arity mismatch") != std::string::npos);

  e = parse_error("theory t\nfluent P/1\nssa P(x): P(x)\nssa P(x): P(x)\ninit\n");
  CHECK(std::string(e.what()).find("duplicate SSA: P") != std::string::npos);

  e = parse_error("theory t\nfluent P/1\naction a(x) poss: Q(x)\nssa P(x): P(x)\ninit\n");
  CHECK(std::string(e.what()).find("unknown fluent") != std::string::npos);
}

TEST_CASE("parse errors point inside the input") {
  const std::vector<std::string> bad = {
      "theory",
      "theory t\nfluent P/\n",
      "theory t\nfluent P/1\naction a(x) poss: P(x) &\n",
      "theory t\nfluent P/1\naction a(x) poss: P(x)\nssa P(x): P(x) | $\n",
      "theory t\nfluent P/1\naction a(x) poss: exists . P(x)\n",
      "theory t\nconstants A\nfluent P/1\naction a() poss: true\nssa P(x): P(x)\ninit P(B)\n",
      "theory t\nfluent P/1\naction a() poss: true\nssa P(x): P(x)\ninit\ninit-constraints true\n",
  };
  for (const std::string& text : bad) {
    ParseError e = parse_error(text);
    int lines = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    CHECK(e.span().line >= 1);
    CHECK(e.span().line <= lines);
    CHECK(e.span().col >= 1);
  }
}

TEST_CASE("temporal formulas") {
  Theory t = load("warehouse_k3");
  MuFormula ef = parse_formula("EF (not exists x. exists l. At(x,l))", t);
  REQUIRE(ef->kind == MuKind::Mu);
  const MuNode& body = *ef->kids[0];
  REQUIRE(body.kind == MuKind::Or);
  CHECK(body.kids[0]->kind == MuKind::Fo);
  REQUIRE(body.kids[1]->kind == MuKind::Dia);
  CHECK(body.kids[1]->kids[0]->kind == MuKind::Var);
  CHECK(body.kids[1]->kids[0]->pvar == ef->pvar);

  try {
    parse_formula("mu Z. not Z", t);
    FAIL("monotonicity violation accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("monotonicity") != std::string::npos);
  }

  MuFormula pers = parse_formula(
      "AG (forall x. (exists l. At(x,l)) implies mu Z. (not exists l. At(x,l)) or live(x) and dia(Z))", t);
  // Find the diamond and check its LIVE vector.
  std::vector<const MuNode*> stack{pers.get()};
  const MuNode* dia = nullptr;
  while (!stack.empty() && !dia) {
    const MuNode* n = stack.back();
    stack.pop_back();
    if (n->kind == MuKind::Dia && !n->vars.empty()) dia = n;
    for (const MuFormula& k : n->kids) stack.push_back(k.get());
  }
  REQUIRE(dia != nullptr);
  CHECK(dia->vars.size() == 1);
  CHECK(symbol_name(dia->vars[0]).find('x') != std::string::npos);

  CHECK_THROWS_AS(parse_formula("EF At(x, Nowhere)", t), ParseError);
  CHECK_THROWS_AS(parse_formula("EF Part(x)", t), ParseError);
  CHECK_THROWS_AS(parse_formula("live(l) & dia(exists x. At(x, SL1))", t), ParseError);
}

TEST_CASE("keywords are case-insensitive") {
  Theory t = load("warehouse_k3");
  MuFormula a = parse_formula("MU Z. (NOT EXISTS x. Exists l. At(x,l)) OR DIA(Z)", t);
  MuFormula b = parse_formula("mu Z. (not exists x. exists l. At(x,l)) or dia(Z)", t);
  CHECK(to_string(a) == to_string(b));
  CHECK_THROWS(parse_formula("EF (not exists x. exists l. at(x,l))", t));
}

TEST_CASE("printing and parsing round trip on the corpus") {
  for (const std::string& path : corpus_theories()) {
    CAPTURE(path);
    Theory t = load_theory(path);
    std::string once = to_dsl(t);
    Theory back = parse_theory(once);
    CHECK(to_dsl(back) == once);
    CHECK(back.fluents.size() == t.fluents.size());
    CHECK(back.actions.size() == t.actions.size());
    CHECK(back.constants == t.constants);
    if (t.has_complete_init()) CHECK(back.initial_interpretation() == t.initial_interpretation());
    CHECK_FALSE(read_file(path).empty());
  }
}
