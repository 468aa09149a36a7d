// Process-wide interning of identifiers (fluents, constants, variables, actions).
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bsc {

using Symbol = std::uint32_t;

// Returns the id of `name`, creating it on first use. Thread-safe.
Symbol intern(std::string_view name);

// Name of an interned symbol. The reference stays valid for the process lifetime.
const std::string& symbol_name(Symbol s);

// Fresh variable names of the form "_<n>" that never collide with names seen so far.
Symbol fresh_variable(std::string_view hint = "");

// Called by the parser for every identifier so the fresh-name counter stays ahead.
void note_identifier(std::string_view name);

}  // namespace bsc
