#include "bsc/interpretation.hpp"

#include <sstream>

#include "bsc/error.hpp"

namespace bsc {

ObjectId ObjectId::parse(std::string_view text) {
  if (!text.empty() && text[0] == '#') {
    std::string digits(text.substr(1));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("malformed fresh object name: " + std::string(text));
    unsigned long n = std::stoul(digits);
    if (n >= kPaddingBase) throw Error("fresh object index out of range: " + std::string(text));
    return fresh(static_cast<std::uint32_t>(n));
  }
  return named(text);
}

std::string ObjectId::str() const {
  if (is_fresh()) return "#" + std::to_string(fresh_index());
  return symbol_name(symbol());
}

std::ostream& operator<<(std::ostream& os, ObjectId o) { return os << o.str(); }

std::string to_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i].str();
  }
  return s + ")";
}

Relation::Relation(std::vector<Tuple> tuples) : tuples_(std::move(tuples)) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

void Relation::insert(const Tuple& t) {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
  if (it == tuples_.end() || *it != t) tuples_.insert(it, t);
}

Signature::Signature(std::vector<FluentDecl> fluents, std::vector<Symbol> constants)
    : fluents_(std::move(fluents)), constants_(std::move(constants)) {
  for (std::size_t i = 0; i < fluents_.size(); ++i) fluent_pos_.emplace(fluents_[i].name, i);
  for (std::size_t i = 0; i < constants_.size(); ++i) constant_pos_.emplace(constants_[i], i);
}

std::optional<std::size_t> Signature::fluent_index(Symbol name) const {
  auto it = fluent_pos_.find(name);
  if (it == fluent_pos_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Signature::constant_index(Symbol name) const {
  auto it = constant_pos_.find(name);
  if (it == constant_pos_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.constants_ != b.constants_ || a.fluents_.size() != b.fluents_.size()) return false;
  for (std::size_t i = 0; i < a.fluents_.size(); ++i) {
    if (a.fluents_[i].name != b.fluents_[i].name || a.fluents_[i].arity != b.fluents_[i].arity) return false;
  }
  return true;
}

Interpretation::Interpretation(std::vector<Relation> relations, std::vector<ObjectId> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
  for (const Relation& r : relations_) {
    for (const Tuple& t : r) adom_.insert(adom_.end(), t.begin(), t.end());
  }
  adom_.insert(adom_.end(), constants_.begin(), constants_.end());
  std::sort(adom_.begin(), adom_.end());
  adom_.erase(std::unique(adom_.begin(), adom_.end()), adom_.end());
}

std::size_t Interpretation::total_tuples() const {
  std::size_t n = 0;
  for (const Relation& r : relations_) n += r.size();
  return n;
}

Interpretation Interpretation::with_relation(std::size_t fluent, Relation r) const {
  std::vector<Relation> rels = relations_;
  rels[fluent] = std::move(r);
  return Interpretation(std::move(rels), constants_);
}

Interpretation Interpretation::renamed(const std::unordered_map<ObjectId, ObjectId>& h) const {
  auto map = [&](ObjectId o) {
    auto it = h.find(o);
    return it == h.end() ? o : it->second;
  };
  std::vector<Relation> rels;
  for (const Relation& r : relations_) {
    std::vector<Tuple> ts;
    for (const Tuple& t : r) {
      Tuple u;
      for (ObjectId o : t) u.push_back(map(o));
      ts.push_back(u);
    }
    rels.emplace_back(std::move(ts));
  }
  std::vector<ObjectId> cs;
  for (ObjectId c : constants_) cs.push_back(map(c));
  return Interpretation(std::move(rels), std::move(cs));
}

std::vector<ObjectId> adom(const Interpretation& i) { return i.adom(); }

std::string to_string(const Interpretation& i, const Signature& sig) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t f = 0; f < sig.fluents().size(); ++f) {
    for (const Tuple& t : i.relation(f)) {
      if (!first) os << " ";
      first = false;
      os << symbol_name(sig.fluents()[f].name) << to_string(t);
    }
  }
  if (first) os << "{}";
  return os.str();
}

}  // namespace bsc
