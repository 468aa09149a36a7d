// Finite transition systems labeled by interpretations, and object bijections.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsc/interpretation.hpp"

namespace bsc {

// Finite injective map between objects, kept sorted by source.
class IsoMap {
 public:
  IsoMap() = default;
  explicit IsoMap(std::vector<std::pair<ObjectId, ObjectId>> pairs);

  std::optional<ObjectId> at(ObjectId o) const;
  ObjectId apply(ObjectId o) const;  // identity outside the domain
  Tuple apply(const Tuple& t) const;
  const std::vector<std::pair<ObjectId, ObjectId>>& pairs() const { return pairs_; }
  std::vector<ObjectId> domain() const;
  std::vector<ObjectId> range() const;
  std::size_t size() const { return pairs_.size(); }
  bool injective() const;
  IsoMap inverse() const;
  // Restriction to the given sorted object set.
  IsoMap restricted(const std::vector<ObjectId>& objs) const;

  friend bool operator==(const IsoMap& a, const IsoMap& b) { return a.pairs_ == b.pairs_; }
  friend bool operator<(const IsoMap& a, const IsoMap& b) { return a.pairs_ < b.pairs_; }

 private:
  std::vector<std::pair<ObjectId, ObjectId>> pairs_;
};

std::string to_string(const IsoMap& h);

class FiniteTS {
 public:
  FiniteTS() = default;
  explicit FiniteTS(Signature sig) : sig_(std::move(sig)) {}

  std::size_t add_state(Interpretation i);
  void add_transition(std::size_t from, std::size_t to);
  void set_initial(std::size_t q) { initial_ = q; }

  const Signature& signature() const { return sig_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const;
  std::size_t initial() const { return initial_; }
  const Interpretation& label(std::size_t q) const { return states_[q]; }
  const std::vector<Interpretation>& labels() const { return states_; }
  const std::vector<std::size_t>& successors(std::size_t q) const { return succ_[q]; }
  bool has_transition(std::size_t from, std::size_t to) const;
  std::vector<std::pair<std::size_t, std::size_t>> transitions() const;

  // Union of the active domains of all states, sorted.
  std::vector<ObjectId> adom_union() const;

  // Empty if the structural invariants hold (shared constants, endpoints in range).
  std::vector<std::string> validate() const;

 private:
  Signature sig_;
  std::vector<Interpretation> states_;
  std::vector<std::vector<std::size_t>> succ_;
  std::size_t initial_ = 0;
};

bool operator==(const FiniteTS& a, const FiniteTS& b);

}  // namespace bsc
