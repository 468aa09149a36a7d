#include "bsc/theory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bsc {

Signature Theory::signature() const { return Signature(fluents, constants); }

std::optional<std::size_t> Theory::fluent_index(Symbol name) const {
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (fluents[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Theory::action_index(Symbol name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == name) return i;
  }
  return std::nullopt;
}

const SuccessorStateAxiom* Theory::ssa_for(Symbol fluent) const {
  for (const SuccessorStateAxiom& s : ssas) {
    if (s.fluent == fluent) return &s;
  }
  return nullptr;
}

std::vector<ObjectId> Theory::constant_objects() const {
  std::vector<ObjectId> out;
  for (Symbol c : constants) out.push_back(ObjectId::named(c));
  return out;
}

Interpretation Theory::initial_interpretation() const {
  const CompleteInit* ci = std::get_if<CompleteInit>(&init);
  if (!ci) throw Error("theory " + name + " has an incomplete initial situation");
  std::vector<Relation> rels = ci->relations;
  rels.resize(fluents.size());
  return Interpretation(std::move(rels), constant_objects());
}

std::size_t Theory::max_action_arity() const {
  std::size_t n = 0;
  for (const ActionTypeDecl& a : actions) n = std::max(n, a.params.size());
  return n;
}

namespace {

std::string names(const std::vector<Symbol>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += symbol_name(vs[i]);
  }
  return s;
}

struct Checker {
  const Theory& t;
  std::vector<Diagnostic>& out;
  std::set<Symbol> consts;

  // Checks on one node; constants are checked once at the root.
  void local(const Formula& f, const std::string& where, const SourceSpan& span) {
    const FoNode& n = *f;
    if (n.kind == FoKind::Atom) {
      auto idx = t.fluent_index(n.pred);
      if (!idx) {
        out.push_back({"unknown fluent " + symbol_name(n.pred) + " in " + where, span});
      } else if (t.fluents[*idx].arity != n.terms.size()) {
        out.push_back({"arity mismatch: " + symbol_name(n.pred) + "/" + std::to_string(n.terms.size()) +
                           " used, declared " + symbol_name(n.pred) + "/" + std::to_string(t.fluents[*idx].arity) +
                           " in " + where,
                       span});
      }
    }
    if (n.kind == FoKind::ActEq) {
      for (const ActionTerm* a : {&n.lhs, &n.rhs}) {
        if (a->is_var) continue;
        auto idx = t.action_index(a->type);
        if (!idx) {
          out.push_back({"unknown action type " + symbol_name(a->type) + " in " + where, span});
        } else if (t.actions[*idx].params.size() != a->args.size()) {
          out.push_back({"arity mismatch: action " + symbol_name(a->type) + " in " + where, span});
        }
      }
    }
  }

  void constants(const Formula& f, const std::string& where, const SourceSpan& span) {
    for (Symbol c : mentioned_constants(f)) {
      if (!consts.count(c)) out.push_back({"unknown constant " + symbol_name(c) + " in " + where, span});
    }
  }

  void atoms(const Formula& f, const std::string& where, const SourceSpan& span) {
    constants(f, where, span);
    walk(f, where, span);
  }

  void walk(const Formula& f, const std::string& where, const SourceSpan& span) {
    local(f, where, span);
    for (const Formula& k : f->kids) walk(k, where, span);
  }
};

}  // namespace

std::vector<Diagnostic> validate_theory(const Theory& t) {
  std::vector<Diagnostic> out;
  Checker ck{t, out, {t.constants.begin(), t.constants.end()}};

  std::set<Symbol> seen;
  for (const FluentDecl& f : t.fluents) {
    if (!seen.insert(f.name).second) out.push_back({"duplicate fluent: " + symbol_name(f.name), {}});
    if (f.arity > kMaxArity) out.push_back({"fluent arity too large: " + symbol_name(f.name), {}});
  }
  seen.clear();
  for (Symbol c : t.constants) {
    if (!seen.insert(c).second) out.push_back({"duplicate constant: " + symbol_name(c), {}});
  }
  seen.clear();
  for (const ActionTypeDecl& a : t.actions) {
    const std::string where = "Poss(" + symbol_name(a.name) + ")";
    if (!seen.insert(a.name).second) out.push_back({"duplicate action type: " + symbol_name(a.name), a.span});
    std::set<Symbol> ps(a.params.begin(), a.params.end());
    if (ps.size() != a.params.size()) out.push_back({"repeated parameter in action " + symbol_name(a.name), a.span});
    if (a.params.size() > kMaxArity) out.push_back({"too many parameters in action " + symbol_name(a.name), a.span});
    if (!a.poss) {
      out.push_back({"missing precondition: " + where, a.span});
      continue;
    }
    for (Symbol v : a.poss->free_vars) {
      if (!ps.count(v)) out.push_back({"free variable " + symbol_name(v) + " escapes " + where, a.span});
    }
    if (!a.poss->free_act_vars.empty()) out.push_back({"action variable used in " + where, a.span});
    ck.atoms(a.poss, where, a.span);
  }

  std::set<Symbol> have_ssa;
  for (const SuccessorStateAxiom& s : t.ssas) {
    const std::string where = "SSA(" + symbol_name(s.fluent) + ")";
    if (!have_ssa.insert(s.fluent).second) {
      out.push_back({"duplicate SSA: " + symbol_name(s.fluent), s.span});
      continue;
    }
    auto idx = t.fluent_index(s.fluent);
    if (!idx) {
      out.push_back({"SSA for unknown fluent " + symbol_name(s.fluent), s.span});
      continue;
    }
    if (t.fluents[*idx].arity != s.params.size())
      out.push_back({"arity mismatch: " + where + " has " + std::to_string(s.params.size()) + " parameters", s.span});
    std::set<Symbol> ps(s.params.begin(), s.params.end());
    if (ps.size() != s.params.size()) out.push_back({"repeated parameter in " + where, s.span});
    for (Symbol v : s.body->free_vars) {
      if (!ps.count(v)) out.push_back({"free variable " + symbol_name(v) + " escapes " + where, s.span});
    }
    for (Symbol v : s.body->free_act_vars) {
      if (v != act_symbol()) out.push_back({"free action variable " + symbol_name(v) + " in " + where, s.span});
    }
    ck.atoms(s.body, where, s.span);
  }
  for (const FluentDecl& f : t.fluents) {
    if (!have_ssa.count(f.name)) out.push_back({"missing SSA: " + symbol_name(f.name), {}});
  }

  if (const CompleteInit* ci = std::get_if<CompleteInit>(&t.init)) {
    if (ci->relations.size() > t.fluents.size()) out.push_back({"initial database has too many relations", {}});
    for (std::size_t i = 0; i < ci->relations.size() && i < t.fluents.size(); ++i) {
      for (const Tuple& tp : ci->relations[i]) {
        if (tp.size() != t.fluents[i].arity)
          out.push_back({"initial tuple width mismatch for " + symbol_name(t.fluents[i].name), {}});
      }
    }
  } else {
    for (const Formula& c : std::get<ConstraintInit>(t.init).constraints) {
      if (!c->free_vars.empty()) out.push_back({"initial constraint is not closed: " + to_string(c), {}});
      if (c->has_action_terms) out.push_back({"action terms in initial constraint", {}});
      ck.atoms(c, "initial constraint", {});
    }
  }
  return out;
}

std::string to_dsl(const Theory& t) {
  std::ostringstream os;
  os << "theory " << (t.name.empty() ? "unnamed" : t.name) << "\n";
  if (!t.constants.empty()) os << "constants " << names(t.constants) << "\n";
  for (const FluentDecl& f : t.fluents) os << "fluent " << symbol_name(f.name) << "/" << f.arity << "\n";
  for (const ActionTypeDecl& a : t.actions)
    os << "action " << symbol_name(a.name) << "(" << names(a.params) << ") poss: " << to_string(a.poss) << "\n";
  for (const SuccessorStateAxiom& s : t.ssas)
    os << "ssa " << symbol_name(s.fluent) << "(" << names(s.params) << "): " << to_string(s.body) << "\n";
  if (const CompleteInit* ci = std::get_if<CompleteInit>(&t.init)) {
    os << "init";
    for (std::size_t i = 0; i < ci->relations.size(); ++i) {
      for (const Tuple& tp : ci->relations[i]) {
        os << " " << symbol_name(t.fluents[i].name) << "(";
        for (std::size_t k = 0; k < tp.size(); ++k) {
          if (tp[k].is_fresh()) throw Error("initial database mentions an unnamed object " + tp[k].str());
          os << (k ? ", " : "") << tp[k].str();
        }
        os << ")";
      }
    }
    os << "\n";
  } else {
    os << "init-constraints\n";
    for (const Formula& c : std::get<ConstraintInit>(t.init).constraints) os << "  (" << to_string(c) << ")\n";
  }
  if (t.declared_bound) os << "bound " << *t.declared_bound << "\n";
  return os.str();
}

}  // namespace bsc
