#include "bsc/atm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bsc/error.hpp"
#include "bsc/parser.hpp"

namespace bsc {

namespace {

bool valid_name(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string state_const(const std::string& q) { return "Q_" + q; }
std::string symbol_const(const std::string& c) { return c == "_" ? "Blank" : "S_" + c; }

}  // namespace

std::vector<std::string> AtmMachine::symbols() const {
  std::set<std::string> s;
  for (const AtmTransition& t : transitions) {
    if (t.read != "_") s.insert(t.read);
    if (t.write != "_") s.insert(t.write);
  }
  return {s.begin(), s.end()};
}

AtmMachine parse_atm(const std::string& text, const std::string& file) {
  AtmMachine m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    SourceSpan sp;
    sp.file = file;
    sp.line = sp.end_line = lineno;
    throw ParseError(msg, sp);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string x; ls >> x;) w.push_back(x);
    if (w.empty()) continue;
    if (w[0] == "state") {
      if (w.size() != 3) fail("expected: state <name> and|or|accept");
      if (!valid_name(w[1])) fail("invalid state name " + w[1]);
      if (m.type.count(w[1])) fail("duplicate state " + w[1]);
      AtmStateType ty;
      if (w[2] == "and")
        ty = AtmStateType::And;
      else if (w[2] == "or")
        ty = AtmStateType::Or;
      else if (w[2] == "accept")
        ty = AtmStateType::Accept;
      else
        fail("unknown state type " + w[2]);
      m.states.push_back(w[1]);
      m.type[w[1]] = ty;
    } else if (w[0] == "trans") {
      if (w.size() != 6) fail("expected: trans <q> <read> <q'> <write> L|R");
      if (w[5] != "L" && w[5] != "R") fail("move must be L or R");
      if (!valid_name(w[2]) || !valid_name(w[4])) fail("invalid tape symbol");
      m.transitions.push_back({w[1], w[2], w[3], w[4], w[5][0]});
    } else if (w[0] == "start") {
      if (w.size() != 2) fail("expected: start <q>");
      m.start = w[1];
    } else {
      fail("unknown directive " + w[0]);
    }
  }
  if (m.start.empty()) fail("missing start state");
  if (!m.type.count(m.start)) fail("undeclared start state " + m.start);
  for (const AtmTransition& t : m.transitions) {
    if (!m.type.count(t.from)) fail("transition from undeclared state " + t.from);
    if (!m.type.count(t.to)) fail("transition to undeclared state " + t.to);
  }
  return m;
}

AtmMachine load_atm(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_atm(ss.str(), path);
}

AtmEncoding atm_theory(const AtmMachine& m, const std::string& input, std::size_t ell) {
  if (input.size() > ell + 1)
    throw Error("input of length " + std::to_string(input.size()) + " does not fit " + std::to_string(ell + 1) +
                " cells");
  std::set<std::string> syms;
  for (const std::string& s : m.symbols()) syms.insert(s);
  for (char c : input) {
    std::string s(1, c);
    if (!valid_name(s)) throw Error(std::string("invalid input symbol '") + c + "'");
    if (s != "_") syms.insert(s);
  }

  std::ostringstream d;
  d << "theory atm\n\nconstants ";
  std::vector<std::string> consts;
  for (const std::string& q : m.states) consts.push_back(state_const(q));
  for (const std::string& s : syms) consts.push_back(symbol_const(s));
  for (const char* c : {"Blank", "L", "R", "G_and", "G_or", "G_accept"}) consts.push_back(c);
  for (std::size_t i = 0; i <= ell; ++i) consts.push_back("Cell_" + std::to_string(i));
  for (std::size_t k = 0; k < consts.size(); ++k) d << (k ? ", " : "") << consts[k];
  d << "\n\n"
       "fluent transTable/5\nfluent gType/2\nfluent cell/2\nfluent state/1\nfluent scan/1\nfluent Succ/2\n\n"
       "action trans(q2, c2, m) poss: exists q, i, c. state(q) & scan(i) & cell(i, c) & transTable(q, c, q2, c2, m)\n\n"
       "ssa transTable(q, c, q2, c2, m): transTable(q, c, q2, c2, m)\n"
       "ssa gType(q, t): gType(q, t)\n"
       "ssa Succ(i, j): Succ(i, j)\n"
       "ssa state(q): (exists c, m. act = trans(q, c, m))\n"
       "  | state(q) & not exists q2, c, m. act = trans(q2, c, m) & q2 != q\n"
       "ssa scan(i):\n"
       "    (exists q, c, j. act = trans(q, c, L) & scan(j) & (j = Cell_0 -> i = j) & (j != Cell_0 -> Succ(i, j)))\n"
       "  | (exists q, c, j. act = trans(q, c, R) & scan(j) & Succ(j, i))\n"
       "  | scan(i) & not exists q, c, m. act = trans(q, c, m)\n"
       "ssa cell(i, c): (exists q, m. act = trans(q, c, m) & scan(i))\n"
       "  | cell(i, c) & not exists q, c2, m. act = trans(q, c2, m) & scan(i) & c2 != c\n\n"
       "init\n";
  for (const AtmTransition& t : m.transitions) {
    d << "  transTable(" << state_const(t.from) << ", " << symbol_const(t.read) << ", " << state_const(t.to) << ", "
      << symbol_const(t.write) << ", " << t.move << ")\n";
  }
  for (const std::string& q : m.states) {
    const char* g = m.type.at(q) == AtmStateType::And ? "G_and" : m.type.at(q) == AtmStateType::Or ? "G_or" : "G_accept";
    d << "  gType(" << state_const(q) << ", " << g << ")\n";
  }
  d << "  state(" << state_const(m.start) << ")\n  scan(Cell_0)\n";
  for (std::size_t i = 0; i <= ell; ++i) {
    std::string s = i < input.size() ? std::string(1, input[i]) : "_";
    d << "  cell(Cell_" << i << ", " << symbol_const(s) << ")\n";
  }
  for (std::size_t i = 0; i < ell; ++i) d << "  Succ(Cell_" << i << ", Cell_" << i + 1 << ")\n";
  std::size_t b = std::max({m.transitions.size(), m.states.size(), ell + 1, std::size_t{1}});
  d << "\nbound " << b << "\n";

  AtmEncoding enc;
  enc.dsl = d.str();
  enc.theory = parse_theory(enc.dsl, "<atm>");
  enc.acceptance = parse_formula(
      "mu Z. ((exists q. state(q) & gType(q, G_accept))"
      " | ((exists q. state(q) & gType(q, G_and)) & box(Z))"
      " | ((exists q. state(q) & gType(q, G_or)) & dia(Z)))",
      enc.theory);
  return enc;
}

}  // namespace bsc
