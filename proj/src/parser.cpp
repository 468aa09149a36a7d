#include "bsc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace bsc {
namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Nat, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1, end_line = 1, end_col = 1;
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : s_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.col = col_;
      if (i_ >= s_.size()) {
        t.kind = Tok::End;
        t.end_line = line_;
        t.end_col = col_;
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (ident_start(c)) {
        std::size_t j = i_;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        std::string word(s_.substr(i_, j - i_));
        if (lower(word) == "init" && s_.substr(j, 12) == "-constraints") {
          word += "-constraints";
          j += 12;
        }
        t.kind = Tok::Ident;
        t.text = word;
        advance(j - i_);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        t.kind = Tok::Nat;
        t.text = std::string(s_.substr(i_, j - i_));
        advance(j - i_);
      } else {
        static const char* multi[] = {"<->", "->", "!=", "&&", "||"};
        t.kind = Tok::Punct;
        bool matched = false;
        for (const char* m : multi) {
          std::string_view mv(m);
          if (s_.substr(i_, mv.size()) == mv) {
            t.text = std::string(mv);
            advance(mv.size());
            matched = true;
            break;
          }
        }
        if (!matched) {
          static const std::string single = "(),.:/|&=!<;";
          if (single.find(c) == std::string::npos) {
            SourceSpan sp{file_, line_, col_, line_, col_ + 1};
            throw ParseError(std::string("unexpected character '") + c + "'", sp);
          }
          t.text = std::string(1, c);
          advance(1);
        }
        if (t.text == "&&") t.text = "&";
        if (t.text == "||") t.text = "|";
      }
      t.end_line = line_;
      t.end_col = col_;
      out.push_back(t);
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }
  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::string file_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------------------
// Syntax tree

enum class SK {
  True, False, Atom, Eq, Neq, ActEq, ActNeq, Not, And, Or, Implies, Iff, Exists, Forall, Count,
  Live, Dia, Box, Mu, Nu, PVar, EF, AG, EG, AF
};

struct Syn;
using SynP = std::shared_ptr<Syn>;

struct Syn {
  SK kind;
  SourceSpan span;
  std::string name;                // atom/action/pvar/binder name
  std::vector<std::string> args;   // terms / bound vars
  std::vector<SourceSpan> arg_spans;
  std::vector<SynP> kids;
  std::size_t nat = 0;
};

bool syn_modal(const Syn& s) {
  switch (s.kind) {
    case SK::Live: case SK::Dia: case SK::Box: case SK::Mu: case SK::Nu: case SK::PVar:
    case SK::EF: case SK::AG: case SK::EG: case SK::AF:
      return true;
    default:
      for (const SynP& k : s.kids) {
        if (syn_modal(*k)) return true;
      }
      return false;
  }
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "theory", "constants", "fluent", "action", "poss", "ssa", "init", "init-constraints", "bound",
      "true", "false", "not", "and", "or", "implies", "iff", "exists", "forall", "count", "live",
      "dia", "box", "mu", "nu", "ef", "ag", "eg", "af"};
  return k;
}

const std::set<std::string>& decl_keywords() {
  static const std::set<std::string> k = {"theory", "constants", "fluent", "action", "ssa",
                                          "init", "init-constraints", "bound"};
  return k;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : t_(std::move(toks)), file_(std::move(file)) {}

  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  SourceSpan span_of(const Token& t) const { return {file_, t.line, t.col, t.end_line, t.end_col}; }
  SourceSpan here() const { return span_of(peek()); }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = at_end() ? "end of input" : "'" + peek().text + "'";
    throw ParseError(msg + ", found " + got, here());
  }

  bool is_kw(const char* kw, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && lower(peek(k).text) == kw;
  }
  bool is_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool accept_kw(const char* kw) {
    if (!is_kw(kw)) return false;
    ++p_;
    return true;
  }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    ++p_;
    return true;
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) fail(std::string("expected '") + kw + "'");
  }
  void expect_punct(const char* p) {
    if (!accept_punct(p)) fail(std::string("expected '") + p + "'");
  }
  bool is_plain_ident(std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && !keywords().count(lower(peek(k).text));
  }
  std::string ident(const char* what) {
    if (!is_plain_ident()) fail(std::string("expected ") + what);
    note_identifier(peek().text);
    return t_[p_++].text;
  }
  std::size_t nat() {
    if (peek().kind != Tok::Nat) fail("expected a natural number");
    return std::stoull(t_[p_++].text);
  }
  bool at_decl_keyword() const {
    return peek().kind == Tok::Ident && decl_keywords().count(lower(peek().text));
  }

  std::vector<std::string> var_list(std::vector<SourceSpan>* spans = nullptr) {
    std::vector<std::string> vs;
    do {
      if (spans) spans->push_back(here());
      vs.push_back(ident("a variable"));
    } while (accept_punct(","));
    return vs;
  }

  // formula := iff
  SynP formula() { return iff(); }

  SynP make(SK k, SourceSpan sp, std::vector<SynP> kids = {}) {
    auto s = std::make_shared<Syn>();
    s->kind = k;
    s->span = sp;
    s->kids = std::move(kids);
    return s;
  }

  SynP iff() {
    SourceSpan sp = here();
    SynP a = implies();
    while (accept_kw("iff") || accept_punct("<->")) a = make(SK::Iff, sp, {a, implies()});
    return a;
  }
  SynP implies() {
    SourceSpan sp = here();
    SynP a = disj();
    if (accept_kw("implies") || accept_punct("->")) return make(SK::Implies, sp, {a, implies()});
    return a;
  }
  SynP disj() {
    SourceSpan sp = here();
    std::vector<SynP> ks{conj()};
    while (accept_punct("|") || accept_kw("or")) ks.push_back(conj());
    return ks.size() == 1 ? ks[0] : make(SK::Or, sp, std::move(ks));
  }
  SynP conj() {
    SourceSpan sp = here();
    std::vector<SynP> ks{unary()};
    while (accept_punct("&") || accept_kw("and")) ks.push_back(unary());
    return ks.size() == 1 ? ks[0] : make(SK::And, sp, std::move(ks));
  }
  SynP unary() {
    SourceSpan sp = here();
    if (accept_kw("not") || accept_punct("!")) return make(SK::Not, sp, {unary()});
    if (is_kw("exists") || is_kw("forall")) {
      SK k = is_kw("exists") ? SK::Exists : SK::Forall;
      ++p_;
      auto s = make(k, sp);
      s->args = var_list(&s->arg_spans);
      expect_punct(".");
      s->kids = {formula()};
      return s;
    }
    if (is_kw("mu") || is_kw("nu")) {
      SK k = is_kw("mu") ? SK::Mu : SK::Nu;
      ++p_;
      auto s = make(k, sp);
      s->name = ident("a predicate variable");
      expect_punct(".");
      s->kids = {formula()};
      return s;
    }
    for (auto [kw, k] : {std::pair{"ef", SK::EF}, {"ag", SK::AG}, {"eg", SK::EG}, {"af", SK::AF}}) {
      if (accept_kw(kw)) return make(k, sp, {unary()});
    }
    return primary();
  }

  SynP primary() {
    SourceSpan sp = here();
    if (accept_kw("true")) return make(SK::True, sp);
    if (accept_kw("false")) return make(SK::False, sp);
    if (accept_punct("(")) {
      SynP f = formula();
      expect_punct(")");
      return f;
    }
    if (accept_kw("count")) {
      auto s = make(SK::Count, sp);
      expect_punct("(");
      s->args = var_list(&s->arg_spans);
      expect_punct("|");
      s->kids = {formula()};
      expect_punct(")");
      expect_punct("<");
      s->nat = nat();
      return s;
    }
    if (accept_kw("live")) {
      auto s = make(SK::Live, sp);
      expect_punct("(");
      if (!is_punct(")")) s->args = var_list(&s->arg_spans);
      expect_punct(")");
      return s;
    }
    if (is_kw("dia") || is_kw("box")) {
      SK k = is_kw("dia") ? SK::Dia : SK::Box;
      ++p_;
      expect_punct("(");
      SynP body = formula();
      expect_punct(")");
      return make(k, sp, {body});
    }
    if (peek().kind == Tok::Ident && peek().text == "act" && (is_punct("=", 1) || is_punct("!=", 1))) {
      ++p_;
      bool neg = peek().text == "!=";
      ++p_;
      auto s = make(neg ? SK::ActNeq : SK::ActEq, sp);
      s->name = ident("an action type");
      expect_punct("(");
      if (!is_punct(")")) s->args = term_list(&s->arg_spans);
      expect_punct(")");
      return s;
    }
    if (is_plain_ident()) {
      std::string name = ident("an identifier");
      if (accept_punct("(")) {
        auto s = make(SK::Atom, sp);
        s->name = name;
        if (!is_punct(")")) s->args = term_list(&s->arg_spans);
        expect_punct(")");
        return s;
      }
      if (is_punct("=") || is_punct("!=")) {
        bool neg = peek().text == "!=";
        ++p_;
        auto s = make(neg ? SK::Neq : SK::Eq, sp);
        s->arg_spans = {sp, here()};
        s->args = {name, ident("a term")};
        return s;
      }
      auto s = make(SK::PVar, sp);
      s->name = name;
      return s;
    }
    fail("expected a formula");
  }

  std::vector<std::string> term_list(std::vector<SourceSpan>* spans) {
    std::vector<std::string> ts;
    do {
      spans->push_back(here());
      ts.push_back(ident("a term"));
    } while (accept_punct(","));
    return ts;
  }

  std::size_t pos() const { return p_; }

 private:
  std::vector<Token> t_;
  std::string file_;
  std::size_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Elaboration

struct Vocabulary {
  std::map<Symbol, std::size_t> fluents;  // name -> arity
  std::set<Symbol> constants;
  std::map<Symbol, std::size_t> actions;  // name -> arity

  explicit Vocabulary(const Theory& t) {
    for (const FluentDecl& f : t.fluents) fluents[f.name] = f.arity;
    constants.insert(t.constants.begin(), t.constants.end());
    for (const ActionTypeDecl& a : t.actions) actions[a.name] = a.params.size();
  }
};

class Elaborator {
 public:
  enum class Mode { Axiom, Closed };

  Elaborator(const Vocabulary& voc, Mode mode, bool allow_act) : voc_(voc), mode_(mode), allow_act_(allow_act) {}

  // Variables allowed free (action/SSA parameters).
  void add_free(Symbol v) { scope_.emplace_back(v, v); }

  Formula fo(const SynP& s) {
    const Syn& n = *s;
    switch (n.kind) {
      case SK::True:
        return fo::True();
      case SK::False:
        return fo::False();
      case SK::Atom: {
        Symbol p = intern(n.name);
        auto it = voc_.fluents.find(p);
        if (it == voc_.fluents.end()) throw ParseError("unknown fluent " + n.name, n.span);
        if (it->second != n.args.size())
          throw ParseError("arity mismatch: " + n.name + "/" + std::to_string(n.args.size()) + " used, declared " +
                               n.name + "/" + std::to_string(it->second),
                           n.span);
        std::vector<Term> args;
        for (std::size_t i = 0; i < n.args.size(); ++i) args.push_back(term(n.args[i], n.arg_spans[i]));
        return fo::Atom(p, std::move(args));
      }
      case SK::Eq:
      case SK::Neq: {
        Formula e = fo::Eq(term(n.args[0], n.arg_spans[0]), term(n.args[1], n.arg_spans[1]));
        return n.kind == SK::Eq ? e : fo::Not(e);
      }
      case SK::ActEq:
      case SK::ActNeq: {
        if (!allow_act_) throw ParseError("action terms are only allowed in successor-state axioms", n.span);
        Symbol a = intern(n.name);
        auto it = voc_.actions.find(a);
        if (it == voc_.actions.end()) throw ParseError("unknown action type " + n.name, n.span);
        if (it->second != n.args.size()) throw ParseError("arity mismatch: action " + n.name, n.span);
        std::vector<Term> args;
        for (std::size_t i = 0; i < n.args.size(); ++i) args.push_back(term(n.args[i], n.arg_spans[i]));
        Formula e = fo::ActEq(ActionTerm::variable(act_symbol()), ActionTerm::apply(a, std::move(args)));
        return n.kind == SK::ActEq ? e : fo::Not(e);
      }
      case SK::Not:
        return fo::Not(fo(n.kids[0]));
      case SK::And:
      case SK::Or: {
        std::vector<Formula> ks;
        for (const SynP& k : n.kids) ks.push_back(fo(k));
        return n.kind == SK::And ? fo::And(std::move(ks)) : fo::Or(std::move(ks));
      }
      case SK::Implies:
        return fo::Implies(fo(n.kids[0]), fo(n.kids[1]));
      case SK::Iff:
        return fo::Iff(fo(n.kids[0]), fo(n.kids[1]));
      case SK::Exists:
      case SK::Forall: {
        std::size_t mark = scope_.size();
        std::vector<Symbol> vs;
        for (std::size_t i = 0; i < n.args.size(); ++i) vs.push_back(bind(n.args[i], n.arg_spans[i]));
        Formula body = fo(n.kids[0]);
        scope_.resize(mark);
        for (auto it = vs.rbegin(); it != vs.rend(); ++it)
          body = n.kind == SK::Exists ? fo::Exists(*it, body) : fo::Forall(*it, body);
        return body;
      }
      case SK::Count: {
        std::size_t mark = scope_.size();
        std::vector<Symbol> vs;
        for (std::size_t i = 0; i < n.args.size(); ++i) vs.push_back(bind(n.args[i], n.arg_spans[i]));
        std::set<Symbol> uniq(vs.begin(), vs.end());
        if (uniq.size() != vs.size()) throw ParseError("repeated variable in count", n.span);
        Formula body = fo(n.kids[0]);
        scope_.resize(mark);
        return fo::Count(std::move(vs), body, n.nat);
      }
      default:
        throw ParseError("temporal operator inside a first-order formula", n.span);
    }
  }

  MuFormula muf(const SynP& s) {
    const Syn& n = *s;
    if (!syn_modal(n)) return mu::Fo(fo(s));
    switch (n.kind) {
      case SK::Not:
        return mu::Not(muf(n.kids[0]));
      case SK::And: {
        if (n.kids.size() == 2) {
          for (int li = 0; li < 2; ++li) {
            const SynP& l = n.kids[li];
            const SynP& m = n.kids[1 - li];
            if (l->kind == SK::Live && (m->kind == SK::Dia || m->kind == SK::Box)) {
              std::vector<Symbol> vs;
              for (std::size_t i = 0; i < l->args.size(); ++i) vs.push_back(lookup_var(l->args[i], l->arg_spans[i]));
              MuFormula body = muf(m->kids[0]);
              MuFormula d = m->kind == SK::Dia ? mu::Dia(body, vs) : mu::Box(body, vs);
              explicit_live_[d.get()] = l->span;
              return d;
            }
          }
        }
        std::vector<MuFormula> ks;
        for (const SynP& k : n.kids) ks.push_back(muf(k));
        return mu::And(std::move(ks));
      }
      case SK::Or: {
        std::vector<MuFormula> ks;
        for (const SynP& k : n.kids) ks.push_back(muf(k));
        return mu::Or(std::move(ks));
      }
      case SK::Implies:
        return mu::Or(mu::Not(muf(n.kids[0])), muf(n.kids[1]));
      case SK::Iff:
        return mu::And(mu::Or(mu::Not(muf(n.kids[0])), muf(n.kids[1])),
                       mu::Or(mu::Not(muf(n.kids[1])), muf(n.kids[0])));
      case SK::Exists:
      case SK::Forall: {
        std::size_t mark = scope_.size();
        std::vector<Symbol> vs;
        for (std::size_t i = 0; i < n.args.size(); ++i) vs.push_back(bind(n.args[i], n.arg_spans[i]));
        SynP body = n.kids[0];
        // Drop an explicit guard live(vars) & ... (exists) or live(vars) implies ... (forall).
        SK guard = n.kind == SK::Exists ? SK::And : SK::Implies;
        if (body->kind == guard && body->kids.size() == 2 && body->kids[0]->kind == SK::Live) {
          std::set<std::string> lv(body->kids[0]->args.begin(), body->kids[0]->args.end());
          std::set<std::string> qv(n.args.begin(), n.args.end());
          if (lv == qv) body = body->kids[1];
        }
        MuFormula b = muf(body);
        scope_.resize(mark);
        for (auto it = vs.rbegin(); it != vs.rend(); ++it)
          b = n.kind == SK::Exists ? mu::ExistsLive(*it, b) : mu::ForallLive(*it, b);
        return b;
      }
      case SK::Live: {
        std::vector<Symbol> vs;
        for (std::size_t i = 0; i < n.args.size(); ++i) vs.push_back(lookup_var(n.args[i], n.arg_spans[i]));
        return mu::Live(std::move(vs));
      }
      case SK::Dia:
        return mu::Dia(muf(n.kids[0]));
      case SK::Box:
        return mu::Box(muf(n.kids[0]));
      case SK::Mu:
      case SK::Nu: {
        Symbol z = intern(n.name);
        pvars_.push_back(z);
        MuFormula b = muf(n.kids[0]);
        pvars_.pop_back();
        return n.kind == SK::Mu ? mu::Mu(z, b) : mu::Nu(z, b);
      }
      case SK::PVar: {
        Symbol z = intern(n.name);
        if (std::find(pvars_.begin(), pvars_.end(), z) == pvars_.end()) {
          if (voc_.fluents.count(z)) throw ParseError("fluent " + n.name + " used without arguments", n.span);
          throw ParseError("unknown predicate variable " + n.name, n.span);
        }
        return mu::Var(z);
      }
      case SK::EF:
        return mu::EF(muf(n.kids[0]));
      case SK::AG:
        return mu::AG(muf(n.kids[0]));
      case SK::EG:
        return mu::EG(muf(n.kids[0]));
      case SK::AF:
        return mu::AF(muf(n.kids[0]));
      case SK::Count:
        throw ParseError("temporal operator inside count", n.span);
      default:
        throw ParseError("unexpected temporal construct", n.span);
    }
  }

  // Checks explicitly written live(...) vectors against the computed ones.
  void check_live(const MuFormula& before, const MuFormula& after) {
    auto it = explicit_live_.find(before.get());
    if (it != explicit_live_.end() && before->vars != after->vars) {
      std::string want;
      for (Symbol v : after->vars) want += (want.empty() ? "" : ", ") + symbol_name(v);
      throw ParseError("LIVE-vector mismatch: the modal body has free variables {" + want + "}", it->second);
    }
    for (std::size_t i = 0; i < before->kids.size(); ++i) check_live(before->kids[i], after->kids[i]);
  }

 private:
  Symbol bind(const std::string& name, const SourceSpan& sp) {
    Symbol s = intern(name);
    if (voc_.constants.count(s)) throw ParseError("cannot quantify over constant " + name, sp);
    if (name == "act") throw ParseError("'act' is reserved", sp);
    bool taken = std::any_of(scope_.begin(), scope_.end(),
                             [&](const auto& p) { return p.first == s || p.second == s; });
    Symbol actual = taken ? fresh_variable(name) : s;
    scope_.emplace_back(s, actual);
    return actual;
  }

  Symbol lookup_var(const std::string& name, const SourceSpan& sp) {
    Symbol s = intern(name);
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == s) return it->second;
    }
    throw ParseError("live() mentions unbound variable " + name, sp);
  }

  Term term(const std::string& name, const SourceSpan& sp) {
    Symbol s = intern(name);
    if (name == "act") throw ParseError("'act' may only appear as act = A(...)", sp);
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == s) return Term::var(it->second);
    }
    if (voc_.constants.count(s)) return Term::constant(s);
    if (mode_ == Mode::Closed) throw ParseError("unknown constant " + name + " (not declared in the theory)", sp);
    return Term::var(s);
  }

  const Vocabulary& voc_;
  Mode mode_;
  bool allow_act_;
  std::vector<std::pair<Symbol, Symbol>> scope_;  // written name -> actual variable
  std::vector<Symbol> pvars_;
  std::map<const MuNode*, SourceSpan> explicit_live_;
};

// ---------------------------------------------------------------------------
// Theory files

struct RawAction {
  std::string name;
  std::vector<std::string> params;
  SynP poss;
  SourceSpan span;
};

struct RawSsa {
  std::string fluent;
  std::vector<std::string> params;
  SynP body;
  SourceSpan span;
};

struct RawAtom {
  std::string fluent;
  std::vector<std::string> args;
  std::vector<SourceSpan> spans;
  SourceSpan span;
};

}  // namespace

Theory parse_theory(std::string_view text, const std::string& file) {
  Parser p(Lexer(text, file).run(), file);
  Theory t;
  p.expect_kw("theory");
  t.name = p.ident("a theory name");

  std::vector<RawAction> actions;
  std::vector<RawSsa> ssas;
  std::vector<RawAtom> init_atoms;
  std::vector<SynP> constraints;
  bool saw_init = false, saw_constraints = false;
  std::map<Symbol, SourceSpan> fluent_spans;

  while (!p.at_end()) {
    SourceSpan sp = p.here();
    if (p.accept_punct(";")) continue;
    if (p.accept_kw("constants")) {
      for (const std::string& c : p.var_list()) {
        Symbol s = intern(c);
        if (std::find(t.constants.begin(), t.constants.end(), s) != t.constants.end())
          throw ParseError("duplicate constant " + c, sp);
        t.constants.push_back(s);
      }
    } else if (p.accept_kw("fluent")) {
      std::string name = p.ident("a fluent name");
      p.expect_punct("/");
      std::size_t ar = p.nat();
      Symbol s = intern(name);
      if (fluent_spans.count(s)) throw ParseError("duplicate fluent " + name, sp);
      if (ar > kMaxArity) throw ParseError("fluent arity too large", sp);
      fluent_spans[s] = sp;
      t.fluents.push_back({s, ar});
    } else if (p.accept_kw("action")) {
      RawAction a;
      a.span = sp;
      a.name = p.ident("an action name");
      p.expect_punct("(");
      if (!p.is_punct(")")) a.params = p.var_list();
      p.expect_punct(")");
      p.expect_kw("poss");
      p.expect_punct(":");
      a.poss = p.formula();
      actions.push_back(std::move(a));
    } else if (p.accept_kw("ssa")) {
      RawSsa s;
      s.span = sp;
      s.fluent = p.ident("a fluent name");
      p.expect_punct("(");
      if (!p.is_punct(")")) s.params = p.var_list();
      p.expect_punct(")");
      p.expect_punct(":");
      s.body = p.formula();
      ssas.push_back(std::move(s));
    } else if (p.accept_kw("init")) {
      saw_init = true;
      while (p.is_plain_ident() && p.is_punct("(", 1)) {
        RawAtom a;
        a.span = p.here();
        a.fluent = p.ident("a fluent name");
        p.expect_punct("(");
        if (!p.is_punct(")")) {
          do {
            a.spans.push_back(p.here());
            a.args.push_back(p.ident("a constant"));
          } while (p.accept_punct(","));
        }
        p.expect_punct(")");
        init_atoms.push_back(std::move(a));
        p.accept_punct(",");
      }
    } else if (p.accept_kw("init-constraints")) {
      saw_constraints = true;
      while (!p.at_end() && !p.at_decl_keyword()) {
        if (p.accept_punct(";")) continue;
        constraints.push_back(p.formula());
      }
    } else if (p.accept_kw("bound")) {
      t.declared_bound = p.nat();
    } else {
      p.fail("expected a declaration");
    }
  }
  if (saw_init && saw_constraints) throw ParseError("both init and init-constraints given", p.here());

  Vocabulary voc(t);
  for (const RawAction& a : actions) {
    ActionTypeDecl d;
    d.name = intern(a.name);
    d.span = a.span;
    if (voc.actions.count(d.name) && std::any_of(t.actions.begin(), t.actions.end(), [&](const ActionTypeDecl& x) { return x.name == d.name; }))
      throw ParseError("duplicate action type " + a.name, a.span);
    for (const std::string& v : a.params) d.params.push_back(intern(v));
    voc.actions[d.name] = d.params.size();
    t.actions.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    Elaborator el(voc, Elaborator::Mode::Axiom, false);
    for (Symbol v : t.actions[i].params) {
      if (voc.constants.count(v)) throw ParseError("parameter shadows constant " + symbol_name(v), actions[i].span);
      el.add_free(v);
    }
    t.actions[i].poss = el.fo(actions[i].poss);
  }
  for (const RawSsa& s : ssas) {
    SuccessorStateAxiom ax;
    ax.fluent = intern(s.fluent);
    ax.span = s.span;
    if (!voc.fluents.count(ax.fluent)) throw ParseError("SSA for undeclared fluent " + s.fluent, s.span);
    if (t.ssa_for(ax.fluent)) throw ParseError("duplicate SSA: " + s.fluent, s.span);
    if (voc.fluents[ax.fluent] != s.params.size())
      throw ParseError("arity mismatch: SSA for " + s.fluent + "/" + std::to_string(voc.fluents[ax.fluent]) + " has " +
                           std::to_string(s.params.size()) + " parameters",
                       s.span);
    Elaborator el(voc, Elaborator::Mode::Axiom, true);
    for (const std::string& v : s.params) {
      Symbol sv = intern(v);
      if (voc.constants.count(sv)) throw ParseError("parameter shadows constant " + v, s.span);
      ax.params.push_back(sv);
      el.add_free(sv);
    }
    ax.body = el.fo(s.body);
    t.ssas.push_back(std::move(ax));
  }
  if (saw_constraints) {
    ConstraintInit ci;
    for (const SynP& c : constraints) {
      Elaborator el(voc, Elaborator::Mode::Closed, false);
      ci.constraints.push_back(el.fo(c));
    }
    t.init = std::move(ci);
  } else {
    CompleteInit ci;
    ci.relations.resize(t.fluents.size());
    for (const RawAtom& a : init_atoms) {
      Symbol f = intern(a.fluent);
      auto idx = t.fluent_index(f);
      if (!idx) throw ParseError("unknown fluent " + a.fluent, a.span);
      if (t.fluents[*idx].arity != a.args.size()) throw ParseError("arity mismatch: " + a.fluent, a.span);
      Tuple tp;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        Symbol c = intern(a.args[i]);
        if (!voc.constants.count(c)) throw ParseError("unknown constant " + a.args[i] + " in initial database", a.spans[i]);
        tp.push_back(ObjectId::named(c));
      }
      ci.relations[*idx].insert(tp);
    }
    t.init = std::move(ci);
  }

  auto diags = validate_theory(t);
  if (!diags.empty()) {
    SourceSpan sp = diags[0].span;
    if (sp.file.empty()) sp.file = file;
    throw ParseError(diags[0].message, sp);
  }
  return t;
}

Theory load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_theory(ss.str(), path);
}

MuFormula parse_formula(std::string_view text, const Theory& t) {
  Parser p(Lexer(text, "").run(), "");
  if (p.at_end()) p.fail("expected a formula");
  SynP s = p.formula();
  if (!p.at_end()) p.fail("unexpected trailing input");
  Vocabulary voc(t);
  Elaborator el(voc, Elaborator::Mode::Closed, false);
  MuFormula raw = el.muf(s);
  MuFormula closed = close_live_vectors(raw);
  el.check_live(raw, closed);
  if (auto err = monotonicity_error(closed)) throw ParseError("monotonicity violation: " + *err, s->span);
  return closed;
}

Formula parse_fo(std::string_view text, const Theory& t, const std::vector<Symbol>& free_vars, bool allow_act) {
  Parser p(Lexer(text, "").run(), "");
  if (p.at_end()) p.fail("expected a formula");
  SynP s = p.formula();
  if (!p.at_end()) p.fail("unexpected trailing input");
  Vocabulary voc(t);
  Elaborator el(voc, Elaborator::Mode::Closed, allow_act);
  for (Symbol v : free_vars) el.add_free(v);
  return el.fo(s);
}

}  // namespace bsc
