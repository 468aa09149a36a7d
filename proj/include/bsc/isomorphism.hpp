// Active-domain isomorphisms between interpretations.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bsc/interpretation.hpp"
#include "bsc/transition_system.hpp"

namespace bsc {

struct IsoConstraints {
  // Pairs every isomorphism must contain (constants are added automatically).
  std::vector<std::pair<ObjectId, ObjectId>> forced;
  // Targets no unforced source may map to (sorted).
  std::vector<ObjectId> forbidden_targets;
};

// Calls `fn` for each bijection h: adom(a) -> adom(b) with h(R_a) = R_b for every
// relation and h(c_a) = c_b for every constant position, honoring `c`.
// Enumeration stops when `fn` returns false. Returns the number of maps reported.
std::size_t enumerate_isomorphisms(const Interpretation& a, const Interpretation& b, const IsoConstraints& c,
                                   const std::function<bool(const IsoMap&)>& fn);

std::optional<IsoMap> find_isomorphism(const Interpretation& a, const Interpretation& b,
                                       const IsoConstraints& c = {});

// Identity on `fix` ∩ adom(a); objects outside `fix` map outside `fix`.
std::optional<IsoMap> find_isomorphism_fixing(const Interpretation& a, const Interpretation& b,
                                              const std::vector<ObjectId>& fix);

// Hash invariant under isomorphisms that fix the constant denotations.
std::size_t iso_invariant(const Interpretation& i);

}  // namespace bsc
