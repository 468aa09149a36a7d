#include "bsc/error.hpp"

namespace bsc {

std::string SourceSpan::str() const {
  std::string s = file.empty() ? "" : file + ":";
  return s + std::to_string(line) + ":" + std::to_string(col);
}

ParseError::ParseError(const std::string& msg, SourceSpan span)
    : Error(span.str() + ": " + msg), span_(std::move(span)), bare_(msg) {}

}  // namespace bsc
