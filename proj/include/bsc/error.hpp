#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bsc {

struct SourceSpan {
  std::string file;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;

  std::string str() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, SourceSpan span);
  const SourceSpan& span() const { return span_; }
  const std::string& bare_message() const { return bare_; }

 private:
  SourceSpan span_;
  std::string bare_;
};

// A reached state exceeds the declared bound. `trace` lists the action labels from
// the initial state to the offending successor (empty when the initial state itself
// is over the bound).
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& msg, std::vector<std::string> trace)
      : Error(msg), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A successor-state axiom produced an infinite relation.
class UnboundedEffect : public Error {
 public:
  using Error::Error;
};

}  // namespace bsc
