//===- propagation.hpp - Ensured and hidden predicate flow -----*- C++ -*-===//
//
// Computes which seeds establish their ENSURES predicates (least fixpoint),
// reports every active requirement left unsatisfied, and attaches hidden
// predicates carrying the producer's errors where a guarantee failed.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "errchain/constraints.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace errchain {

/// Everything the propagation needs to know about one seed.
struct SeedAnalysis {
  const Seed *seed = nullptr;
  std::vector<EventFiring> firings;
  /// Typestate, incomplete-operation, forbidden-method and constraint-class
  /// errors of this seed.
  std::vector<ErrorReport> own_errors;
  std::vector<ActiveRequirement> requirements;
};

/// Kinds that stop a seed from ensuring anything. INCOMPLETE_OPERATION is
/// not among them; REQUIRED_PREDICATE acts through requirement satisfaction.
bool is_blocking(ErrorKind kind);

/// Predicate instances attached to each value.
using PredicateEnvironment = std::map<ValueId, std::vector<PredicateInstance>>;

enum class LookupStatus { Ensured, Hidden, Absent };

struct PredicateLookup {
  LookupStatus status = LookupStatus::Absent;
  /// Union of the cause sets of all hidden instances; empty unless Hidden.
  std::set<std::string> causes;
};

/// ENSURED if any producer ensured it, else HIDDEN if any producer failed,
/// else ABSENT.
PredicateLookup predicate_lookup(const PredicateEnvironment &env,
                                 const ValueId &value,
                                 std::string_view predicate);

struct UnsatisfiedRequirement {
  std::string error_id;
  ActiveRequirement requirement;
};

struct PropagationResult {
  PredicateEnvironment env;
  /// REQUIRED_PREDICATE errors, deduplicated by id.
  std::vector<ErrorReport> rp_errors;
  std::vector<UnsatisfiedRequirement> unsatisfied;
  int rounds = 0;
};

/// (producer seed, predicate, target) triples with their path sets.
using EnsuredKey = std::tuple<std::string, std::string, ValueId>;
using EnsuredSet = std::map<EnsuredKey, std::set<int>>;

/// The ENSURED instances of `env` as a flat set.
EnsuredSet ensured_set(const PredicateEnvironment &env);

/// True if for every path of `req` some entry of `ensured` with the same
/// predicate and value covers that path.
bool requirement_satisfied(const ActiveRequirement &req,
                           const EnsuredSet &ensured);

/// What `analysis` ensures given the guarantees already in `ensured`.
/// Empty when the seed is blocked or has an unsatisfied requirement.
EnsuredSet seed_contribution(const SeedAnalysis &analysis,
                             const EnsuredSet &ensured);

/// Runs the fixpoint and, with `sed_enabled`, the hidden-predicate pass.
/// The REQUIRED_PREDICATE errors do not depend on `sed_enabled`.
PropagationResult propagate(std::span<const SeedAnalysis> seeds,
                            bool sed_enabled);

} // namespace errchain
