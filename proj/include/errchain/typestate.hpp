//===- typestate.hpp - Seeds and per-seed typestate ------------*- C++ -*-===//

#pragma once

#include "errchain/core_model.hpp"
#include "errchain/paths.hpp"
#include "errchain/rule_set.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace errchain {

/// A tracked instance of a rule class, identified by its creation site.
struct Seed {
  std::string id;
  const CompiledRule *rule = nullptr;
  SourceLocation creation;
  std::vector<int> creation_context;
  ValueId value;
  /// Paths on which the creation statement executes.
  std::set<int> paths;

  const std::string &class_name() const { return rule->spec.class_name; }
};

struct ArgBinding {
  ValueId value;
  LiteralSet literals;
  std::set<std::string> types;
};

struct EventFiring {
  std::string seed_id;
  int path_id = 0;
  std::string label;
  SourceLocation location;
  /// Rule parameter name -> bound argument. `_` parameters are not bound.
  std::map<std::string, ArgBinding> bindings;
  bool valid_transition = true;
  Fsm::State resulting_state = 0;
  /// Value produced by the call, when it produces one.
  std::optional<ValueId> result;
};

struct TypestateResult {
  std::vector<EventFiring> firings;
  std::vector<ErrorReport> errors;
};

/// Seeds are `new T(...)` of a rule class with a constructor event (or a
/// forbidden constructor), and static calls `T.m(...)` matching an event
/// enabled in the start state. Ordered by creation statement, then context.
std::vector<Seed> detect_seeds(const Program &program,
                               std::span<const ExecutionPath> paths,
                               const RuleSet &rules);

/// Drives the seed's automaton along every path containing it. A call with
/// no transition yields a TYPESTATE error and leaves the state unchanged; a
/// path ending in a non-accepting state yields INCOMPLETE_OPERATION at the
/// seed's last event. Errors are deduplicated by id.
TypestateResult run_typestate(const Seed &seed, const Program &program,
                              std::span<const ExecutionPath> paths);

std::vector<ErrorReport>
forbidden_method_check(const Seed &seed, const Program &program,
                       std::span<const ExecutionPath> paths);

/// Appends `report` unless a report with the same id is already present.
void add_unique(std::vector<ErrorReport> &reports, ErrorReport report);

} // namespace errchain
