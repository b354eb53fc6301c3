//===- paths.hpp - Inlined execution paths and value facts ----*- C++ -*-===//

#pragma once

#include "errchain/core_model.hpp"
#include "errchain/program.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace errchain {

/// How a value came into existence.
struct ValueOrigin {
  enum class Kind { Literal, Allocation, CallResult, EntryParameter };
  Kind kind = Kind::Literal;
  std::optional<Literal> literal;
  std::set<std::string> types;
};

/// One executed statement on a path, with every operand resolved to the
/// value identity it denotes at that point.
struct PathStep {
  const Statement *stmt = nullptr;
  /// Call sites this statement was inlined through, outermost first.
  std::vector<int> context;
  std::optional<ValueId> receiver;
  std::vector<ValueId> args;
  /// Value produced by New/StaticCall/InstanceCall/UserCall/Assign/Copy.
  std::optional<ValueId> result;

  int statement_id() const { return stmt->id; }
};

struct ExecutionPath {
  int id = 0;
  std::vector<PathStep> steps;
  std::map<ValueId, ValueOrigin> origins;
};

/// Number of paths through inlined main, saturating at SIZE_MAX.
std::size_t count_paths(const Program &program);

/// Every path through `main` with user calls inlined. Each branch
/// contributes both arms; paths are ordered then-before-else, left to
/// right. Throws PathBudgetExceeded when the count exceeds `max_paths` and
/// ProgramError when a variable is read before it is bound on some path.
std::vector<ExecutionPath> enumerate_paths(const Program &program,
                                           std::size_t max_paths);

/// Literal constants reaching `value` on `path`; nullopt means UNKNOWN
/// (object values, call results, entry parameters).
using LiteralSet = std::optional<std::set<Literal>>;
LiteralSet extract_literals(const ExecutionPath &path, const ValueId &value);

/// Static types of `value`: String/Int/Bytes for literals, the allocated
/// type for `new`, and the receiver type for static factory calls. Empty
/// when nothing is known.
std::set<std::string> static_type(const ExecutionPath &path,
                                  const ValueId &value);

} // namespace errchain
