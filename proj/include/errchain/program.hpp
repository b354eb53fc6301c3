//===- program.hpp - Analysis-subject program model ------------*- C++ -*-===//
//
// A small loop-free, recursion-free language with just enough shape to
// express API usage: allocations, static factories, instance calls, calls
// to user functions, and nondeterministic two-way branches.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "errchain/core_model.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace errchain {

/// A call argument: a variable name or an inline literal.
using Arg = std::variant<std::string, Literal>;

struct Statement;
using Block = std::vector<Statement>;

struct AssignStmt {
  std::string target;
  Literal value;
};
struct CopyStmt {
  std::string target;
  std::string source;
};
struct NewStmt {
  std::string target;
  std::string type_name;
  std::vector<Arg> args;
};
struct StaticCallStmt {
  std::string target; // empty when the result is discarded
  std::string type_name;
  std::string method;
  std::vector<Arg> args;
};
struct InstanceCallStmt {
  std::string target;
  std::string receiver;
  std::string method;
  std::vector<Arg> args;
};
struct UserCallStmt {
  std::string target;
  std::string function;
  std::vector<Arg> args;
};
struct ReturnStmt {
  std::string source;
};
struct BranchStmt {
  Block then_block;
  Block else_block;
};

struct Statement {
  int id = 0;
  int line = 0;
  std::variant<AssignStmt, CopyStmt, NewStmt, StaticCallStmt, InstanceCallStmt,
               UserCallStmt, ReturnStmt, BranchStmt>
      body;

  template <typename T> const T *as() const { return std::get_if<T>(&body); }
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
  int line = 0;
  bool returns_value() const;
};

struct Program {
  std::string file;
  std::map<std::string, FunctionDef> functions;
  /// line of statement i is statement_lines[i - 1].
  std::vector<int> statement_lines;

  const FunctionDef &entry() const { return functions.at("main"); }
  std::size_t statement_count() const { return statement_lines.size(); }
  SourceLocation location(int statement_id) const;
};

/// Parses a `.mprog` document. Throws ParseError on syntax errors and
/// ProgramError for a missing main, duplicate functions, calls to unknown
/// functions, arity mismatches, misplaced returns or recursion.
Program parse_program(std::string_view text, const std::string &file);

} // namespace errchain
