// Theory-to-theory constructions and the pipelines built on them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsc/abstraction.hpp"
#include "bsc/mucheck.hpp"
#include "bsc/theory.hpp"

namespace bsc {

// Conjoins each Poss with the regression of "every fluent holds at most b tuples"
// through that action.
Theory blocking_transform(const Theory& t, std::size_t b);

// Replaces each fluent F by F_0..F_ell; F_ell holds fresh positive effects while
// fewer than b of them occur, F_i inherits F_{i+1} unless an effect touches it.
// Throws Error when an SSA is not of the form γ⁺ ∨ F(x̄) ∧ ¬γ⁻.
Theory fading_transform(const Theory& t, std::size_t ell, std::size_t b);
// Name of level i of fluent F after fading.
std::string faded_name(Symbol fluent, std::size_t i);

// Primed name F' of fluent F.
Symbol primed(Symbol fluent);
// Theory over primed fluents whose dynamics switch off once the original theory
// could exceed b in one step. Requires a complete initial situation within b.
Theory boundedness_check_theory(const Theory& t, std::size_t b);

struct BoundednessVerdict {
  bool bounded = false;
  // Executable action sequence from the initial situation ending in a state where
  // some fluent exceeds b. Empty when the initial situation itself exceeds b.
  std::vector<ActionInstance> counter_prefix;
  std::vector<std::string> counter_labels;
  std::string reason;
  std::size_t states = 0;  // of the abstract system of D′
  std::size_t transitions = 0;
  std::size_t adom = 0;
};

BoundednessVerdict check_bounded(const Theory& t, std::size_t b, const AbstractionConfig& cfg = {});

struct InitEnumeration {
  std::vector<Interpretation> interpretations;
  bool truncated = false;
  std::size_t candidates = 0;  // complete candidates reached before quotienting
  std::size_t objects = 0;     // b′
};

InitEnumeration enumerate_initial_models(const Theory& t, std::size_t b, std::size_t guard = 1000000);

// Reference enumerator without pruning or symmetry breaking (small instances only).
InitEnumeration enumerate_initial_models_brute(const Theory& t, std::size_t b, std::size_t guard = 1000000);

struct IncompleteVerdict {
  bool holds = false;
  std::vector<bool> cell_holds;
  std::optional<std::size_t> failing_cell;
  InitEnumeration cells;
};

// Throws Error if the enumeration is truncated.
IncompleteVerdict verify_incomplete(const Theory& t, const MuFormula& f, std::size_t b,
                                    const AbstractionConfig& cfg = {}, std::size_t guard = 1000000);

// Copy of t whose initial situation is the given interpretation.
Theory with_initial(const Theory& t, const Interpretation& init);

}  // namespace bsc
