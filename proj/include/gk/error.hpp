#pragma once

#include <stdexcept>
#include <string>

namespace gk {

struct SourcePos {
  int line = 0;  // 1-based; 0 means "not from a source file"
  int col = 0;

  bool operator==(const SourcePos&) const = default;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or syntactic failure while reading a presentation, term, model or
// trace. Carries the position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourcePos pos)
      : Error(pos.line > 0 ? std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + what
                           : what),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

// Domain/codomain mismatch in a word, sum, rule application or evaluation.
class TypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace gk
