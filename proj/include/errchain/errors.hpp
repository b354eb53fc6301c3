//===- errors.hpp - Input and operational failures ------------*- C++ -*-===//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace errchain {

/// Base for every problem with the analyzer's inputs (rules or program).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error at a source position.
class ParseError : public InputError {
public:
  ParseError(std::string source, int line, int column, const std::string &what)
      : InputError(source + ":" + std::to_string(line) + ":" +
                   std::to_string(column) + ": " + what),
        source_(std::move(source)), line_(line), column_(column) {}

  const std::string &source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  std::string source_;
  int line_;
  int column_;
};

/// Well-formed rule text with unresolved or inconsistent declarations.
class RuleError : public InputError {
public:
  using InputError::InputError;
};

/// Well-formed program text that violates the language's static rules
/// (missing main, duplicate function, recursion, unbound variable, ...).
class ProgramError : public InputError {
public:
  using InputError::InputError;
};

class PathBudgetExceeded : public std::runtime_error {
public:
  PathBudgetExceeded(std::size_t bound, std::size_t count, bool saturated)
      : std::runtime_error("path budget exceeded: program has " +
                           std::string(saturated ? "more than " : "") +
                           std::to_string(count) + " paths, bound is " +
                           std::to_string(bound)),
        bound_(bound), count_(count) {}

  std::size_t bound() const { return bound_; }
  std::size_t count() const { return count_; }

private:
  std::size_t bound_;
  std::size_t count_;
};

} // namespace errchain
