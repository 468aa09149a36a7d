// Text front ends: theory DSL and temporal formulas.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bsc/mu_formula.hpp"
#include "bsc/theory.hpp"

namespace bsc {

// Parses a theory. Throws ParseError (syntax or semantic, with position).
Theory parse_theory(std::string_view text, const std::string& file = "");
Theory load_theory(const std::string& path);

// Parses a closed temporal formula over the theory's vocabulary.
MuFormula parse_formula(std::string_view text, const Theory& t);

// Parses a first-order formula; `free_vars` may occur free. Action equalities are
// allowed when `allow_act` is set (SSA-style bodies).
Formula parse_fo(std::string_view text, const Theory& t, const std::vector<Symbol>& free_vars = {},
                 bool allow_act = false);

}  // namespace bsc
