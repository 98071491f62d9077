#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prefopt {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error with a 1-based line/column position.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

struct TypeError : Error {
  using Error::Error;
};

/// Raised when a normalization or search would exceed its configured budget.
struct BudgetError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

/// Raised by --verify style replays when an evaluator disagrees with the
/// reference result.
struct VerifyError : Error {
  using Error::Error;
};

/// Internal soundness violation (a returned model or witness failed its
/// automatic re-check). Always a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace prefopt
