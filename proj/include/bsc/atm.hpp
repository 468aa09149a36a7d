// Alternating Turing machines on a tape of fixed length, encoded as bounded theories.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bsc/mu_formula.hpp"
#include "bsc/theory.hpp"

namespace bsc {

enum class AtmStateType { And, Or, Accept };

struct AtmTransition {
  std::string from;
  std::string read;  // "_" is the blank
  std::string to;
  std::string write;
  char move = 'R';  // 'L' or 'R'
};

struct AtmMachine {
  std::vector<std::string> states;  // declaration order
  std::map<std::string, AtmStateType> type;
  std::vector<AtmTransition> transitions;
  std::string start;

  // Tape symbols used by transitions, sorted, without the blank.
  std::vector<std::string> symbols() const;
};

// Line format, '#' starts a comment:
//   state <name> and|or|accept
//   trans <q> <read> <q'> <write> L|R
//   start <q>
AtmMachine parse_atm(const std::string& text, const std::string& file = "");
AtmMachine load_atm(const std::string& path);

struct AtmEncoding {
  Theory theory;
  MuFormula acceptance;
  std::string dsl;  // theory text the encoding was parsed from
};

// Theory of the machine on `input` (one symbol per character, '_' is blank) padded
// with blanks to ell+1 cells, plus the closed formula stating acceptance.
AtmEncoding atm_theory(const AtmMachine& m, const std::string& input, std::size_t ell);

}  // namespace bsc
