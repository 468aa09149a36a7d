#include "bsc/transition_system.hpp"

#include <algorithm>
#include <set>

#include "bsc/error.hpp"

namespace bsc {

IsoMap::IsoMap(std::vector<std::pair<ObjectId, ObjectId>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].first == pairs_[i - 1].first) throw Error("IsoMap maps one object twice");
  }
}

std::optional<ObjectId> IsoMap::at(ObjectId o) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(o, ObjectId()),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == pairs_.end() || it->first != o) return std::nullopt;
  return it->second;
}

ObjectId IsoMap::apply(ObjectId o) const { return at(o).value_or(o); }

Tuple IsoMap::apply(const Tuple& t) const {
  Tuple r;
  for (ObjectId o : t) r.push_back(apply(o));
  return r;
}

std::vector<ObjectId> IsoMap::domain() const {
  std::vector<ObjectId> d;
  for (const auto& p : pairs_) d.push_back(p.first);
  return d;
}

std::vector<ObjectId> IsoMap::range() const {
  std::vector<ObjectId> r;
  for (const auto& p : pairs_) r.push_back(p.second);
  std::sort(r.begin(), r.end());
  return r;
}

bool IsoMap::injective() const {
  std::vector<ObjectId> r = range();
  return std::adjacent_find(r.begin(), r.end()) == r.end();
}

IsoMap IsoMap::inverse() const {
  std::vector<std::pair<ObjectId, ObjectId>> inv;
  for (const auto& p : pairs_) inv.emplace_back(p.second, p.first);
  return IsoMap(std::move(inv));
}

IsoMap IsoMap::restricted(const std::vector<ObjectId>& objs) const {
  std::vector<std::pair<ObjectId, ObjectId>> out;
  for (const auto& p : pairs_) {
    if (std::binary_search(objs.begin(), objs.end(), p.first)) out.push_back(p);
  }
  IsoMap r;
  r.pairs_ = std::move(out);
  return r;
}

std::string to_string(const IsoMap& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.pairs().size(); ++i) {
    if (i) s += ", ";
    s += h.pairs()[i].first.str() + "->" + h.pairs()[i].second.str();
  }
  return s + "}";
}

std::size_t FiniteTS::add_state(Interpretation i) {
  states_.push_back(std::move(i));
  succ_.emplace_back();
  return states_.size() - 1;
}

void FiniteTS::add_transition(std::size_t from, std::size_t to) {
  if (from >= states_.size() || to >= states_.size()) throw Error("transition endpoint out of range");
  auto& s = succ_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

std::size_t FiniteTS::num_transitions() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

bool FiniteTS::has_transition(std::size_t from, std::size_t to) const {
  const auto& s = succ_[from];
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteTS::transitions() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q = 0; q < succ_.size(); ++q) {
    for (std::size_t r : succ_[q]) out.emplace_back(q, r);
  }
  return out;
}

std::vector<ObjectId> FiniteTS::adom_union() const {
  std::set<ObjectId> all;
  for (const Interpretation& i : states_) all.insert(i.adom().begin(), i.adom().end());
  return {all.begin(), all.end()};
}

std::vector<std::string> FiniteTS::validate() const {
  std::vector<std::string> out;
  if (states_.empty()) out.push_back("no states");
  if (initial_ >= states_.size()) out.push_back("initial state out of range");
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (states_[q].constants() != states_[0].constants()) out.push_back("state " + std::to_string(q) + " interprets constants differently");
    if (states_[q].relations().size() != sig_.fluents().size()) out.push_back("state " + std::to_string(q) + " has the wrong number of relations");
  }
  return out;
}

bool operator==(const FiniteTS& a, const FiniteTS& b) {
  return a.signature() == b.signature() && a.initial() == b.initial() && a.labels() == b.labels() &&
         a.transitions() == b.transitions();
}

}  // namespace bsc
