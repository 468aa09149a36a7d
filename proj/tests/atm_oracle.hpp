// Direct recursive acceptance check for alternating Turing machines on a bounded tape.
// Moving left from the first cell stays put; moving right from the last cell leaves
// the head off the tape, where no transition applies.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bsc/atm.hpp"

namespace bsc::testing {

class AtmOracle {
 public:
  AtmOracle(const AtmMachine& m, const std::string& input, std::size_t ell) : m_(m) {
    Config c{m.start, {}, 0};
    for (std::size_t i = 0; i <= ell; ++i) c.tape.push_back(i < input.size() ? std::string(1, input[i]) : "_");
    init_ = c;
  }

  bool accepts() {
    // Depth one more than the number of reachable configurations is enough for a
    // least fixpoint over them.
    std::set<Config> seen;
    std::vector<Config> stack{init_};
    while (!stack.empty()) {
      Config c = stack.back();
      stack.pop_back();
      if (!seen.insert(c).second) continue;
      for (const Config& s : successors(c)) stack.push_back(s);
    }
    return accept(init_, seen.size() + 1);
  }

 private:
  struct Config {
    std::string state;
    std::vector<std::string> tape;
    std::size_t head;  // tape.size() means off the tape
    bool operator<(const Config& o) const {
      return std::tie(state, tape, head) < std::tie(o.state, o.tape, o.head);
    }
  };

  std::vector<Config> successors(const Config& c) const {
    std::vector<Config> out;
    if (c.head >= c.tape.size()) return out;
    for (const AtmTransition& t : m_.transitions) {
      if (t.from != c.state || t.read != c.tape[c.head]) continue;
      Config n = c;
      n.state = t.to;
      n.tape[c.head] = t.write;
      if (t.move == 'L')
        n.head = c.head == 0 ? 0 : c.head - 1;
      else
        n.head = c.head + 1;
      out.push_back(n);
    }
    return out;
  }

  bool accept(const Config& c, std::size_t depth) {
    const AtmStateType type = m_.type.at(c.state);
    if (type == AtmStateType::Accept) return true;
    if (depth == 0) return false;
    auto key = std::make_pair(c, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = type == AtmStateType::And;
    for (const Config& s : successors(c)) {
      bool a = accept(s, depth - 1);
      if (type == AtmStateType::And && !a) {
        r = false;
        break;
      }
      if (type == AtmStateType::Or && a) {
        r = true;
        break;
      }
    }
    memo_[key] = r;
    return r;
  }

  const AtmMachine& m_;
  Config init_;
  std::map<std::pair<Config, std::size_t>, bool> memo_;
};

inline bool atm_oracle_accepts(const AtmMachine& m, const std::string& input, std::size_t ell) {
  return AtmOracle(m, input, ell).accepts();
}

}  // namespace bsc::testing
