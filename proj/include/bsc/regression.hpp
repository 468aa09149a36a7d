// One-step dynamics: executability, successor states, one-step regression and the
// boundedness formulas.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bsc/fo_eval.hpp"
#include "bsc/theory.hpp"

namespace bsc {

struct ActionInstance {
  std::size_t type = 0;  // index into Theory::actions
  std::vector<ObjectId> args;
};

std::string to_string(const ActionInstance& a, const Theory& t);

// How Count nodes are regressed. Expand rewrites them into their quantified encoding
// first; Keep regresses the counted body in place. Both denote the same formula.
enum class CountMode { Expand, Keep };

// Action-suppressed Poss bodies and per-(action type, fluent) SSA instances, with the
// action parameters renamed apart from the SSA parameters.
class Dynamics {
 public:
  explicit Dynamics(const Theory& t);

  const Theory& theory() const { return *t_; }
  const Signature& signature() const { return sig_; }
  const std::vector<Symbol>& action_params(std::size_t a) const { return act_params_[a]; }
  const Formula& poss_body(std::size_t a) const { return poss_[a]; }
  const std::vector<Symbol>& fluent_params(std::size_t f) const { return fl_params_[f]; }
  // φ_{F,A}(x̄, ȳ) with x̄ = fluent_params(f), ȳ = action_params(a).
  const Formula& effect(std::size_t a, std::size_t f) const { return eff_[a][f]; }
  // The SSA instance is F(x̄) itself.
  bool is_frame(std::size_t a, std::size_t f) const { return frame_[a][f]; }

  bool poss(Evaluator& ev, const ActionInstance& a) const;
  // Throws UnboundedEffect if some successor relation is infinite.
  Interpretation apply(Evaluator& ev, const ActionInstance& a) const;

  // Regresses φ (seen as holding after A(args)) to the current situation.
  Formula regress(const Formula& phi, std::size_t a, const std::vector<Term>& args,
                  CountMode mode = CountMode::Expand) const;

 private:
  std::shared_ptr<const Theory> t_;
  Signature sig_;
  std::vector<std::vector<Symbol>> act_params_;
  std::vector<Formula> poss_;
  std::vector<std::vector<Symbol>> fl_params_;
  std::vector<std::vector<Formula>> eff_;
  std::vector<std::vector<bool>> frame_;
};

bool poss(const Interpretation& i, const ActionInstance& a, const Theory& t);
Interpretation apply_ssa(const Interpretation& i, const ActionInstance& a, const Theory& t);

Formula regress_one_step(const Formula& phi, std::size_t action, const std::vector<Term>& args, const Theory& t,
                         CountMode mode = CountMode::Expand);

// Count(x̄ | F(x̄)) < b.
Formula bounded_formula(const FluentDecl& f, std::size_t b);
// F holds at most b tuples.
Formula within_bound(const FluentDecl& f, std::size_t b);
// Every fluent holds at most b tuples.
Formula theory_within_bound(const std::vector<FluentDecl>& fluents, std::size_t b);
bool state_within_bound(const Interpretation& i, std::size_t b);

// ⋀_A ∀ȳ. Poss(A(ȳ)) ⊃ R_A[every fluent holds at most b tuples]; normalized.
Formula next_orig_bounded(const Theory& t, std::size_t b);

}  // namespace bsc
