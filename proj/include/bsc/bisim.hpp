// Persistence-preserving bisimulation between finite transition systems.
#pragma once

#include <vector>

#include "bsc/transition_system.hpp"

namespace bsc {

struct BisimTriple {
  std::size_t q1 = 0;
  IsoMap h;
  std::size_t q2 = 0;
};

struct BisimResult {
  bool bisimilar = false;
  std::vector<BisimTriple> relation;  // greatest bisimulation, filled when bisimilar
  std::size_t rounds = 0;
  std::size_t seed_size = 0;
};

BisimResult is_bisimilar(const FiniteTS& t1, const FiniteTS& t2);

// g on adom(q1′) and h on adom(q1) combine into one bijection.
bool compatible(const IsoMap& h, const Interpretation& q1, const Interpretation& q2, const IsoMap& g,
                const Interpretation& q1next);

}  // namespace bsc
