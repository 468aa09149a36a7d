// First-order mu-calculus formulas with LIVE-guarded quantification.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsc/formula.hpp"

namespace bsc {

enum class MuKind : std::uint8_t {
  Fo,          // embedded action-free FO formula
  Live,        // LIVE(vars)
  Not,
  And,
  Or,
  ExistsLive,  // exists vars[0]. LIVE(vars[0]) & kid
  Dia,         // LIVE(vars) & <->kid
  Box,         // LIVE(vars) & [-]kid
  Var,         // predicate variable
  Mu,
  Nu,
};

struct MuNode;
using MuFormula = std::shared_ptr<const MuNode>;

struct MuNode {
  MuKind kind = MuKind::Fo;
  Formula fo;          // normalized FO leaf
  Formula fo_surface;  // as written, for printing
  std::vector<Symbol> vars;
  Symbol pvar = 0;
  std::vector<MuFormula> kids;

  // Derived. For Var nodes free_vars is empty: the dependency on the binder's
  // parameters is carried by the predicate environment.
  std::vector<Symbol> free_vars;
  std::vector<Symbol> free_pvars;
  bool modal = false;  // contains Dia/Box/Var/fixpoints/Live/ExistsLive

  const MuFormula& kid(std::size_t i = 0) const { return kids[i]; }
};

namespace mu {
MuFormula Fo(Formula f);
MuFormula Live(std::vector<Symbol> vars);
MuFormula Not(MuFormula f);
MuFormula And(std::vector<MuFormula> fs);
MuFormula And(MuFormula a, MuFormula b);
MuFormula Or(std::vector<MuFormula> fs);
MuFormula Or(MuFormula a, MuFormula b);
MuFormula ExistsLive(Symbol v, MuFormula f);
MuFormula ForallLive(Symbol v, MuFormula f);  // not exists v. LIVE(v) & not f
// Live vectors are left empty here; close_live_vectors fills them in.
MuFormula Dia(MuFormula f, std::vector<Symbol> live = {});
MuFormula Box(MuFormula f, std::vector<Symbol> live = {});
MuFormula Var(Symbol z);
MuFormula Mu(Symbol z, MuFormula f);
MuFormula Nu(Symbol z, MuFormula f);

// CTL abbreviations with fresh predicate variables.
MuFormula EF(MuFormula f);
MuFormula AG(MuFormula f);
MuFormula EG(MuFormula f);
MuFormula AF(MuFormula f);
}  // namespace mu

// Sets the LIVE vector of every Dia/Box to the free individual variables of its body,
// unfolding bound predicate variables to their binding fixpoint formulas.
MuFormula close_live_vectors(const MuFormula& f);

// Error message if some bound predicate variable occurs under an odd number of negations.
std::optional<std::string> monotonicity_error(const MuFormula& f);

// Free individual variables after unfolding predicate variables.
std::vector<Symbol> free_individual_vars(const MuFormula& f);

// not mu Z. not body[Z / not Z]: the greatest fixpoint via the least one.
MuFormula nu_by_duality(Symbol z, const MuFormula& body);

// Constants mentioned in embedded FO formulas.
std::vector<Symbol> mentioned_constants(const MuFormula& f);

bool equal(const MuFormula& a, const MuFormula& b);

std::string to_string(const MuFormula& f);

}  // namespace bsc
