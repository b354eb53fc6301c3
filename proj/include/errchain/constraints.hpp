//===- constraints.hpp - Value constraints and requirements ----*- C++ -*-===//

#pragma once

#include "errchain/typestate.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace errchain {

enum class Truth { False, True, Unknown };

std::string_view to_string(Truth truth);

/// Guard truth keyed by the guard's canonical text (print_condition).
using GuardEnv = std::map<std::string, Truth>;

/// Evaluates `guard` over the union of the literals bound to its parameter
/// by `firings`. TRUE when some literal satisfies it, FALSE when every
/// binding is a known literal and none does, UNKNOWN otherwise (including a
/// parameter that is never bound).
Truth evaluate_guard(const ValueCondition &guard,
                     std::span<const EventFiring> firings);

struct ConstraintResult {
  std::vector<ErrorReport> errors;
  GuardEnv guard_env;
};

/// Checks every CONSTRAINT of the seed's rule against each firing binding
/// the constrained parameter. A value needs a witnessing literal to be
/// reported; UNKNOWN values never are. Implications only apply when all
/// guards are TRUE. `bet_enabled` does not influence constraints; it is
/// accepted so both halves of the engine share one signature.
ConstraintResult evaluate_constraints(const Seed &seed,
                                      std::span<const EventFiring> firings,
                                      bool bet_enabled);

/// A predicate the seed needs on a concrete value.
struct ActiveRequirement {
  std::string predicate;
  std::string param;
  ValueId value;
  SourceLocation location;
  std::string seed_id;
  /// Paths on which the requiring event binds `value`.
  std::set<int> paths;

  bool operator==(const ActiveRequirement &) const = default;
};

/// One requirement per (spec, firing statement, bound value). With BET a
/// guarded spec is dropped only when its guard is FALSE; without BET guards
/// are ignored.
std::vector<ActiveRequirement>
resolve_required(const Seed &seed, std::span<const EventFiring> firings,
                 const GuardEnv &guard_env, bool bet_enabled);

} // namespace errchain
