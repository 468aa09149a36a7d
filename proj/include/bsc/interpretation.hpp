// Fluent signatures and interpretations (the labeling of one state).
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsc/object.hpp"

namespace bsc {

struct FluentDecl {
  Symbol name = 0;
  std::size_t arity = 0;
};

// Fluent and constant vocabulary shared by the states of one system.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<FluentDecl> fluents, std::vector<Symbol> constants);

  const std::vector<FluentDecl>& fluents() const { return fluents_; }
  const std::vector<Symbol>& constants() const { return constants_; }
  std::optional<std::size_t> fluent_index(Symbol name) const;
  std::optional<std::size_t> constant_index(Symbol name) const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::vector<FluentDecl> fluents_;
  std::vector<Symbol> constants_;
  std::unordered_map<Symbol, std::size_t> fluent_pos_;
  std::unordered_map<Symbol, std::size_t> constant_pos_;
};

// Relations indexed by fluent position, constant denotations indexed by constant
// position. Immutable; the active domain is computed on construction.
class Interpretation {
 public:
  Interpretation() = default;
  Interpretation(std::vector<Relation> relations, std::vector<ObjectId> constants);

  const std::vector<Relation>& relations() const { return relations_; }
  const Relation& relation(std::size_t fluent) const { return relations_[fluent]; }
  const std::vector<ObjectId>& constants() const { return constants_; }
  ObjectId constant(std::size_t i) const { return constants_[i]; }

  // Sorted active domain: every object in some tuple plus the constant denotations.
  const std::vector<ObjectId>& adom() const { return adom_; }
  bool in_adom(ObjectId o) const { return std::binary_search(adom_.begin(), adom_.end(), o); }
  std::size_t total_tuples() const;

  // Copy with one relation replaced.
  Interpretation with_relation(std::size_t fluent, Relation r) const;
  // Applies an injective renaming; objects missing from the map are kept.
  Interpretation renamed(const std::unordered_map<ObjectId, ObjectId>& h) const;

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.constants_ == b.constants_ && a.relations_ == b.relations_;
  }
  friend bool operator!=(const Interpretation& a, const Interpretation& b) { return !(a == b); }
  friend bool operator<(const Interpretation& a, const Interpretation& b) {
    return a.relations_ != b.relations_ ? a.relations_ < b.relations_ : a.constants_ < b.constants_;
  }

 private:
  std::vector<Relation> relations_;
  std::vector<ObjectId> constants_;
  std::vector<ObjectId> adom_;
};

std::vector<ObjectId> adom(const Interpretation& i);

std::string to_string(const Interpretation& i, const Signature& sig);

}  // namespace bsc

template <>
struct std::hash<bsc::Interpretation> {
  std::size_t operator()(const bsc::Interpretation& i) const noexcept {
    std::size_t h = 0;
    for (const auto& r : i.relations()) {
      bsc::hash_combine(h, r.size());
      for (const auto& t : r) bsc::hash_combine(h, std::hash<bsc::Tuple>()(t));
    }
    return h;
  }
};
