// Objects of the (infinite) domain, tuples and finite relations over them.
#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "bsc/symbol.hpp"

namespace bsc {

// A domain element. Named objects carry an interned symbol; fresh objects a counter
// value and print as "#n". Order: named objects (by interning order) before fresh
// objects (by counter).
class ObjectId {
 public:
  ObjectId() = default;

  static ObjectId named(Symbol s) { return ObjectId(s); }
  static ObjectId named(std::string_view name) { return ObjectId(intern(name)); }
  static ObjectId fresh(std::uint32_t n) {
    assert(n < kFreshBit);
    return ObjectId(kFreshBit | n);
  }
  // Parses "#n" as fresh(n), anything else as a named object.
  static ObjectId parse(std::string_view text);

  bool is_fresh() const { return (raw_ & kFreshBit) != 0; }
  bool is_named() const { return !is_fresh(); }
  Symbol symbol() const {
    assert(is_named());
    return raw_;
  }
  std::uint32_t fresh_index() const {
    assert(is_fresh());
    return raw_ & ~kFreshBit;
  }
  std::uint32_t raw() const { return raw_; }
  std::string str() const;

  friend bool operator==(ObjectId a, ObjectId b) { return a.raw_ == b.raw_; }
  friend bool operator!=(ObjectId a, ObjectId b) { return a.raw_ != b.raw_; }
  friend bool operator<(ObjectId a, ObjectId b) { return a.raw_ < b.raw_; }
  friend bool operator>(ObjectId a, ObjectId b) { return a.raw_ > b.raw_; }
  friend bool operator<=(ObjectId a, ObjectId b) { return a.raw_ <= b.raw_; }

  static constexpr std::uint32_t kFreshBit = 0x80000000u;

 private:
  explicit ObjectId(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_ = 0;
};

std::ostream& operator<<(std::ostream& os, ObjectId o);

// Fresh indices at or above this value are reserved for evaluation padding and
// never appear in interpretations.
inline constexpr std::uint32_t kPaddingBase = 1u << 30;

inline ObjectId padding_object(std::uint32_t k) { return ObjectId::fresh(kPaddingBase + k); }
inline bool is_padding(ObjectId o) { return o.is_fresh() && o.fresh_index() >= kPaddingBase; }

inline constexpr std::size_t kMaxArity = 8;

// Fixed-capacity tuple; no heap allocation.
class Tuple {
 public:
  Tuple() = default;
  Tuple(std::initializer_list<ObjectId> xs) {
    assert(xs.size() <= kMaxArity);
    for (ObjectId o : xs) v_[n_++] = o;
  }
  explicit Tuple(const std::vector<ObjectId>& xs) {
    assert(xs.size() <= kMaxArity);
    for (ObjectId o : xs) v_[n_++] = o;
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  ObjectId operator[](std::size_t i) const { return v_[i]; }
  ObjectId& operator[](std::size_t i) { return v_[i]; }
  void push_back(ObjectId o) {
    assert(n_ < kMaxArity);
    v_[n_++] = o;
  }
  void resize(std::size_t n) { n_ = static_cast<std::uint8_t>(n); }
  const ObjectId* begin() const { return v_.data(); }
  const ObjectId* end() const { return v_.data() + n_; }

  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend bool operator!=(const Tuple& a, const Tuple& b) { return !(a == b); }
  friend bool operator<(const Tuple& a, const Tuple& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<ObjectId, kMaxArity> v_{};
  std::uint8_t n_ = 0;
};

std::string to_string(const Tuple& t);

// A finite relation: sorted, duplicate-free vector of tuples of one width.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::vector<Tuple> tuples);

  void insert(const Tuple& t);
  bool contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  friend bool operator==(const Relation& a, const Relation& b) { return a.tuples_ == b.tuples_; }
  friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }
  friend bool operator<(const Relation& a, const Relation& b) { return a.tuples_ < b.tuples_; }

 private:
  std::vector<Tuple> tuples_;
};

// Combines hashes (boost-style).
inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace bsc

template <>
struct std::hash<bsc::ObjectId> {
  std::size_t operator()(bsc::ObjectId o) const noexcept { return std::hash<std::uint32_t>()(o.raw()); }
};

template <>
struct std::hash<bsc::Tuple> {
  std::size_t operator()(const bsc::Tuple& t) const noexcept {
    std::size_t h = t.size();
    for (bsc::ObjectId o : t) bsc::hash_combine(h, o.raw());
    return h;
  }
};
