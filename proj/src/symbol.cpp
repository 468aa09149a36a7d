#include "bsc/symbol.hpp"

#include <atomic>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace bsc {
namespace {

struct Table {
  std::mutex mu;
  std::deque<std::string> names;  // deque: stable references
  std::unordered_map<std::string, Symbol> ids;
};

Table& table() {
  static Table t;
  return t;
}

std::atomic<std::uint64_t> g_fresh{0};

}  // namespace

Symbol intern(std::string_view name) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  Symbol id = static_cast<Symbol>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(t.names.back(), id);
  return id;
}

const std::string& symbol_name(Symbol s) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(s);
}

void note_identifier(std::string_view name) {
  if (name.empty() || name[0] != '_') return;
  size_t end = name.size();
  size_t start = end;
  while (start > 0 && std::isdigit(static_cast<unsigned char>(name[start - 1]))) --start;
  if (start == end || end - start > 15) return;
  std::uint64_t n = std::stoull(std::string(name.substr(start)));
  std::uint64_t cur = g_fresh.load();
  while (cur <= n && !g_fresh.compare_exchange_weak(cur, n + 1)) {
  }
}

Symbol fresh_variable(std::string_view hint) {
  std::string base = "_";
  for (char c : hint) {
    if (std::isalpha(static_cast<unsigned char>(c))) base.push_back(c);
  }
  return intern(base + std::to_string(g_fresh.fetch_add(1)));
}

}  // namespace bsc
