// Basic action theories with situation-suppressed axioms.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bsc/error.hpp"
#include "bsc/formula.hpp"
#include "bsc/interpretation.hpp"

namespace bsc {

struct ActionTypeDecl {
  Symbol name = 0;
  std::vector<Symbol> params;
  Formula poss;  // free variables among params
  SourceSpan span;
};

struct SuccessorStateAxiom {
  Symbol fluent = 0;
  std::vector<Symbol> params;
  Formula body;  // free variables among params and `act`
  SourceSpan span;
};

struct CompleteInit {
  std::vector<Relation> relations;  // by fluent position
};

struct ConstraintInit {
  std::vector<Formula> constraints;  // closed
};

struct Theory {
  std::string name;
  std::vector<FluentDecl> fluents;
  std::vector<Symbol> constants;
  std::vector<ActionTypeDecl> actions;
  std::vector<SuccessorStateAxiom> ssas;
  std::variant<CompleteInit, ConstraintInit> init;
  std::optional<std::size_t> declared_bound;

  Signature signature() const;
  std::optional<std::size_t> fluent_index(Symbol name) const;
  std::optional<std::size_t> action_index(Symbol name) const;
  const SuccessorStateAxiom* ssa_for(Symbol fluent) const;
  bool has_complete_init() const { return std::holds_alternative<CompleteInit>(init); }
  // Each constant denotes the named object of the same name.
  std::vector<ObjectId> constant_objects() const;
  // Requires CompleteInit.
  Interpretation initial_interpretation() const;
  std::size_t max_action_arity() const;
};

struct Diagnostic {
  std::string message;
  SourceSpan span;
};

// Empty iff the theory is well formed.
std::vector<Diagnostic> validate_theory(const Theory& t);

// Theory DSL text that parses back to an equivalent theory.
std::string to_dsl(const Theory& t);

}  // namespace bsc
