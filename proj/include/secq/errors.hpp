#pragma once

#include <stdexcept>
#include <string>

namespace secq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text rejected by the reader. line/col are 1-based.
struct ParseError : Error {
  int line;
  int col;

  ParseError(const std::string& msg, int line_, int col_)
      : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// Engine invariant violated or an input the rewrite rules cannot reduce.
struct EvalError : Error {
  using Error::Error;
};

// Numeric evaluation would exceed the assignment budget.
struct ScaleError : Error {
  using Error::Error;
};

}  // namespace secq
