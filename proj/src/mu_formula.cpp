#include "bsc/mu_formula.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "bsc/error.hpp"

namespace bsc {
namespace {

void sort_unique(std::vector<Symbol>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

MuFormula finish(MuNode n) {
  n.free_vars.clear();
  n.free_pvars.clear();
  n.modal = false;
  for (const MuFormula& k : n.kids) {
    n.free_vars.insert(n.free_vars.end(), k->free_vars.begin(), k->free_vars.end());
    n.free_pvars.insert(n.free_pvars.end(), k->free_pvars.begin(), k->free_pvars.end());
    n.modal = n.modal || k->modal;
  }
  switch (n.kind) {
    case MuKind::Fo:
      n.free_vars = n.fo->free_vars;
      break;
    case MuKind::Live:
    case MuKind::Dia:
    case MuKind::Box:
      n.free_vars.insert(n.free_vars.end(), n.vars.begin(), n.vars.end());
      n.modal = true;
      break;
    case MuKind::ExistsLive:
      n.free_vars.erase(std::remove(n.free_vars.begin(), n.free_vars.end(), n.vars[0]), n.free_vars.end());
      n.modal = true;
      break;
    case MuKind::Var:
      n.free_pvars.push_back(n.pvar);
      n.modal = true;
      break;
    case MuKind::Mu:
    case MuKind::Nu:
      n.free_pvars.erase(std::remove(n.free_pvars.begin(), n.free_pvars.end(), n.pvar), n.free_pvars.end());
      n.modal = true;
      break;
    default:
      break;
  }
  sort_unique(n.free_vars);
  sort_unique(n.free_pvars);
  return std::make_shared<const MuNode>(std::move(n));
}

MuNode node(MuKind k) {
  MuNode n;
  n.kind = k;
  return n;
}

}  // namespace

namespace mu {

MuFormula Fo(Formula f) {
  MuNode n = node(MuKind::Fo);
  n.fo_surface = f;
  n.fo = normalize(f);
  if (n.fo->has_action_terms) throw Error("action terms are not allowed in temporal formulas");
  return finish(std::move(n));
}
MuFormula Live(std::vector<Symbol> vars) {
  MuNode n = node(MuKind::Live);
  sort_unique(vars);
  n.vars = std::move(vars);
  return finish(std::move(n));
}
MuFormula Not(MuFormula f) {
  MuNode n = node(MuKind::Not);
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
MuFormula And(std::vector<MuFormula> fs) {
  MuNode n = node(MuKind::And);
  n.kids = std::move(fs);
  return finish(std::move(n));
}
MuFormula And(MuFormula a, MuFormula b) { return And(std::vector<MuFormula>{std::move(a), std::move(b)}); }
MuFormula Or(std::vector<MuFormula> fs) {
  MuNode n = node(MuKind::Or);
  n.kids = std::move(fs);
  return finish(std::move(n));
}
MuFormula Or(MuFormula a, MuFormula b) { return Or(std::vector<MuFormula>{std::move(a), std::move(b)}); }
MuFormula ExistsLive(Symbol v, MuFormula f) {
  MuNode n = node(MuKind::ExistsLive);
  n.vars = {v};
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
MuFormula ForallLive(Symbol v, MuFormula f) { return Not(ExistsLive(v, Not(std::move(f)))); }
MuFormula Dia(MuFormula f, std::vector<Symbol> live) {
  MuNode n = node(MuKind::Dia);
  sort_unique(live);
  n.vars = std::move(live);
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
MuFormula Box(MuFormula f, std::vector<Symbol> live) {
  MuNode n = node(MuKind::Box);
  sort_unique(live);
  n.vars = std::move(live);
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
MuFormula Var(Symbol z) {
  MuNode n = node(MuKind::Var);
  n.pvar = z;
  return finish(std::move(n));
}
MuFormula Mu(Symbol z, MuFormula f) {
  MuNode n = node(MuKind::Mu);
  n.pvar = z;
  n.kids = {std::move(f)};
  return finish(std::move(n));
}
MuFormula Nu(Symbol z, MuFormula f) {
  MuNode n = node(MuKind::Nu);
  n.pvar = z;
  n.kids = {std::move(f)};
  return finish(std::move(n));
}

MuFormula EF(MuFormula f) {
  Symbol z = fresh_variable("Z");
  return Mu(z, Or(std::move(f), Dia(Var(z))));
}
MuFormula AG(MuFormula f) {
  Symbol z = fresh_variable("Z");
  return Nu(z, And(std::move(f), Box(Var(z))));
}
MuFormula EG(MuFormula f) {
  Symbol z = fresh_variable("Z");
  return Nu(z, And(std::move(f), Dia(Var(z))));
}
MuFormula AF(MuFormula f) {
  Symbol z = fresh_variable("Z");
  return Mu(z, Or(std::move(f), Box(Var(z))));
}

}  // namespace mu

namespace {

using ZMap = std::map<Symbol, std::vector<Symbol>>;

std::vector<Symbol> fv(const MuFormula& f, const ZMap& zmap) {
  const MuNode& n = *f;
  std::vector<Symbol> out;
  switch (n.kind) {
    case MuKind::Fo:
      out = n.fo->free_vars;
      break;
    case MuKind::Live:
      out = n.vars;
      break;
    case MuKind::Var: {
      auto it = zmap.find(n.pvar);
      if (it != zmap.end()) out = it->second;
      break;
    }
    case MuKind::Mu:
    case MuKind::Nu: {
      ZMap inner = zmap;
      inner[n.pvar] = {};
      out = fv(n.kids[0], inner);
      break;
    }
    case MuKind::ExistsLive:
      out = fv(n.kids[0], zmap);
      out.erase(std::remove(out.begin(), out.end(), n.vars[0]), out.end());
      break;
    default:
      for (const MuFormula& k : n.kids) {
        auto s = fv(k, zmap);
        out.insert(out.end(), s.begin(), s.end());
      }
      if (n.kind == MuKind::Dia || n.kind == MuKind::Box) out.insert(out.end(), n.vars.begin(), n.vars.end());
      break;
  }
  sort_unique(out);
  return out;
}

MuFormula rebuild_with(const MuNode& n, std::vector<MuFormula> kids, std::vector<Symbol> vars) {
  MuNode m = n;
  m.kids = std::move(kids);
  m.vars = std::move(vars);
  return finish(std::move(m));
}

MuFormula close_rec(const MuFormula& f, const ZMap& zmap) {
  const MuNode& n = *f;
  switch (n.kind) {
    case MuKind::Fo:
    case MuKind::Live:
    case MuKind::Var:
      return f;
    case MuKind::Mu:
    case MuKind::Nu: {
      ZMap probe = zmap;
      probe[n.pvar] = {};
      ZMap inner = zmap;
      inner[n.pvar] = fv(n.kids[0], probe);
      return rebuild_with(n, {close_rec(n.kids[0], inner)}, n.vars);
    }
    case MuKind::Dia:
    case MuKind::Box: {
      MuFormula body = close_rec(n.kids[0], zmap);
      return rebuild_with(n, {body}, fv(body, zmap));
    }
    default: {
      std::vector<MuFormula> kids;
      for (const MuFormula& k : n.kids) kids.push_back(close_rec(k, zmap));
      return rebuild_with(n, std::move(kids), n.vars);
    }
  }
}

std::optional<std::string> mono_rec(const MuFormula& f, bool negative, std::map<Symbol, bool>& binders) {
  const MuNode& n = *f;
  switch (n.kind) {
    case MuKind::Var: {
      auto it = binders.find(n.pvar);
      if (it != binders.end() && it->second != negative)
        return symbol_name(n.pvar) + " under odd negations";
      return std::nullopt;
    }
    case MuKind::Not:
      return mono_rec(n.kids[0], !negative, binders);
    case MuKind::Mu:
    case MuKind::Nu: {
      auto saved = binders.find(n.pvar) != binders.end() ? std::optional<bool>(binders[n.pvar]) : std::nullopt;
      binders[n.pvar] = negative;
      auto r = mono_rec(n.kids[0], negative, binders);
      if (saved) {
        binders[n.pvar] = *saved;
      } else {
        binders.erase(n.pvar);
      }
      return r;
    }
    default:
      for (const MuFormula& k : n.kids) {
        if (auto r = mono_rec(k, negative, binders)) return r;
      }
      return std::nullopt;
  }
}

MuFormula negate_var(const MuFormula& f, Symbol z) {
  const MuNode& n = *f;
  if (std::find(n.free_pvars.begin(), n.free_pvars.end(), z) == n.free_pvars.end()) return f;
  if (n.kind == MuKind::Var) return mu::Not(f);
  std::vector<MuFormula> kids;
  for (const MuFormula& k : n.kids) kids.push_back(negate_var(k, z));
  return rebuild_with(n, std::move(kids), n.vars);
}

}  // namespace

MuFormula close_live_vectors(const MuFormula& f) { return close_rec(f, {}); }

std::optional<std::string> monotonicity_error(const MuFormula& f) {
  std::map<Symbol, bool> binders;
  return mono_rec(f, false, binders);
}

std::vector<Symbol> free_individual_vars(const MuFormula& f) { return fv(f, {}); }

MuFormula nu_by_duality(Symbol z, const MuFormula& body) {
  return mu::Not(mu::Mu(z, mu::Not(negate_var(body, z))));
}

std::vector<Symbol> mentioned_constants(const MuFormula& f) {
  std::set<Symbol> out;
  std::vector<const MuNode*> stack{f.get()};
  while (!stack.empty()) {
    const MuNode* n = stack.back();
    stack.pop_back();
    if (n->kind == MuKind::Fo) {
      for (Symbol c : mentioned_constants(n->fo)) out.insert(c);
    }
    for (const MuFormula& k : n->kids) stack.push_back(k.get());
  }
  return {out.begin(), out.end()};
}

bool equal(const MuFormula& a, const MuFormula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->vars != b->vars || a->pvar != b->pvar || a->kids.size() != b->kids.size())
    return false;
  if (a->kind == MuKind::Fo && !equal(a->fo, b->fo)) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

namespace {

struct Printed {
  std::string text;
  int prec;  // 0 extends right, 3 or, 4 and, 5 not, 6 atomic
};

std::string wrap(const Printed& p, bool paren) { return paren ? "(" + p.text + ")" : p.text; }

std::string var_list(const std::vector<Symbol>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += symbol_name(vs[i]);
  }
  return s;
}

Printed print(const MuFormula& f) {
  const MuNode& n = *f;
  switch (n.kind) {
    case MuKind::Fo: {
      const FoKind k = n.fo_surface->kind;
      const bool atomic = k == FoKind::Atom || k == FoKind::True || k == FoKind::False || k == FoKind::Eq ||
                          k == FoKind::Count;
      return {to_string(n.fo_surface), atomic ? 6 : 0};
    }
    case MuKind::Live:
      return {"live(" + var_list(n.vars) + ")", 6};
    case MuKind::Not: {
      Printed k = print(n.kids[0]);
      if (k.prec == 0) return {"not " + k.text, 0};
      return {"not " + wrap(k, k.prec < 5), 5};
    }
    case MuKind::And:
    case MuKind::Or: {
      const int prec = n.kind == MuKind::And ? 4 : 3;
      std::string s;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        Printed k = print(n.kids[i]);
        if (i) s += n.kind == MuKind::And ? " & " : " | ";
        s += wrap(k, k.prec <= prec);
      }
      return {s, prec};
    }
    case MuKind::ExistsLive: {
      const std::string v = symbol_name(n.vars[0]);
      if (n.kids[0]->modal) return {"exists " + v + ". " + print(n.kids[0]).text, 0};
      Printed k = print(n.kids[0]);
      return {"exists " + v + ". live(" + v + ") & " + wrap(k, k.prec <= 4), 0};
    }
    case MuKind::Dia:
    case MuKind::Box: {
      std::string op = n.kind == MuKind::Dia ? "dia(" : "box(";
      std::string s = op + print(n.kids[0]).text + ")";
      if (n.vars.empty()) return {s, 6};
      return {"live(" + var_list(n.vars) + ") & " + s, 4};
    }
    case MuKind::Var:
      return {symbol_name(n.pvar), 6};
    case MuKind::Mu:
    case MuKind::Nu:
      return {std::string(n.kind == MuKind::Mu ? "mu " : "nu ") + symbol_name(n.pvar) + ". " + print(n.kids[0]).text, 0};
  }
  return {"?", 6};
}

}  // namespace

std::string to_string(const MuFormula& f) { return print(f).text; }

}  // namespace bsc
