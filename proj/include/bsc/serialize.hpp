// JSON form of finite transition systems.
#pragma once

#include <string>

#include "bsc/transition_system.hpp"

namespace bsc {

// {"constants": {name: object}, "fluents": {name: arity}, "states": [{"id", "fluents":
// {name: [[obj, ...], ...]}}], "initial": id, "transitions": [[from, to], ...]}.
// Keys keep declaration order, so equal systems serialize to identical bytes.
std::string ts_to_json(const FiniteTS& ts, int indent = 2);

// Throws Error on malformed input.
FiniteTS ts_from_json(const std::string& text);
FiniteTS load_ts(const std::string& path);

}  // namespace bsc
