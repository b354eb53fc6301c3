//===- core_model.hpp - Shared analysis data model ------------*- C++ -*-===//
//
// Locations, literal values, value identities, error reports, predicate
// instances, configuration, timings and chain statistics. Every other
// module of the analyzer speaks in these types.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace errchain {

struct SourceLocation {
  std::string file;
  int line = 1;
  /// Ordinal of the statement in the parsed program (1-based, text order).
  int statement_id = 0;

  auto operator<=>(const SourceLocation &) const = default;
};

/// The seven diagnostic kinds. No analysis emits anything else.
enum class ErrorKind {
  Constraint,
  RequiredPredicate,
  Typestate,
  IncompleteOperation,
  HardCoded,
  NeverTypeOf,
  ForbiddenMethod,
};

inline constexpr std::array<ErrorKind, 7> kAllErrorKinds = {
    ErrorKind::Constraint,          ErrorKind::RequiredPredicate,
    ErrorKind::Typestate,           ErrorKind::IncompleteOperation,
    ErrorKind::HardCoded,           ErrorKind::NeverTypeOf,
    ErrorKind::ForbiddenMethod};

/// Machine tag, e.g. "REQUIRED_PREDICATE".
std::string_view to_tag(ErrorKind kind);
/// Human name, e.g. "RequiredPredicateError".
std::string_view display_name(ErrorKind kind);
std::optional<ErrorKind> parse_error_kind(std::string_view tag);

enum class LiteralKind { String, Int, Bytes };

/// A constant appearing in a rule or a program: "text", 42 or bytes("text").
struct Literal {
  LiteralKind kind = LiteralKind::String;
  std::string text;
  std::int64_t number = 0;

  static Literal string(std::string s) {
    return {LiteralKind::String, std::move(s), 0};
  }
  static Literal integer(std::int64_t n) { return {LiteralKind::Int, {}, n}; }
  static Literal bytes(std::string s) {
    return {LiteralKind::Bytes, std::move(s), 0};
  }

  /// Source spelling, round-trippable through both front ends.
  std::string spelling() const;
  /// "String", "Int" or "Bytes".
  std::string_view type_name() const;

  auto operator<=>(const Literal &) const = default;
};

/// Identity of a runtime value along execution paths.
///
/// A value is minted by exactly one defining site: the result of statement
/// `def_site` (slot == -1), a literal argument at position `slot` of that
/// statement, or parameter `slot` of the entry function (def_site == 0).
/// `context` lists the call-site statement ids the definition was inlined
/// through, outermost first. Copies, returns and parameter binding never
/// mint a new identity.
struct ValueId {
  int def_site = 0;
  int slot = -1;
  std::vector<int> context;

  std::string str() const;
  auto operator<=>(const ValueId &) const = default;
};

struct ErrorReport {
  std::string id;
  ErrorKind kind = ErrorKind::Constraint;
  SourceLocation location;
  std::string rule_class;
  std::string seed_id;
  std::string message;
  /// Present iff kind == RequiredPredicate.
  std::optional<std::string> predicate_name;
  std::set<std::string> preceding_ids;
  std::set<std::string> subsequent_ids;

  bool is_subsequent() const { return !preceding_ids.empty(); }
};

/// Deterministic identifier of an error. Distinct (kind, statement, seed,
/// predicate) tuples always map to distinct ids within one program.
std::string make_error_id(ErrorKind kind, const SourceLocation &location,
                          std::string_view seed_id,
                          const std::optional<std::string> &predicate_name);

/// Orders reports by statement, then kind, then id.
bool report_order(const ErrorReport &a, const ErrorReport &b);

enum class PredicateStatus { Ensured, Hidden };

struct PredicateInstance {
  std::string name;
  ValueId target_value;
  std::string producing_seed;
  PredicateStatus status = PredicateStatus::Ensured;
  /// Empty iff status == Ensured.
  std::set<std::string> cause_error_ids;
  /// Execution paths on which the producer reaches its ensuring point.
  std::set<int> paths;
};

struct AnalysisConfig {
  /// Subsequent error detection: hidden predicates and chain links.
  bool sed_enabled = true;
  /// Backward error tracking: honor guarded REQUIRES. Needs sed_enabled.
  bool bet_enabled = true;
  std::size_t max_paths = 4096;
  bool collect_timings = false;

  /// Throws std::invalid_argument when the combination is not allowed.
  void validate() const;
};

struct PhaseTimings {
  double rule_parse_ms = 0;
  double program_parse_ms = 0;
  double seed_detection_ms = 0;
  double typestate_ms = 0;
  double constraints_ms = 0;
  double propagation_ms = 0;
  double chain_mapping_ms = 0;
  double reporting_ms = 0;
  double total_ms = 0;

  double phase_sum() const {
    return rule_parse_ms + program_parse_ms + seed_detection_ms +
           typestate_ms + constraints_ms + propagation_ms + chain_mapping_ms +
           reporting_ms;
  }
};

/// Ordered (phase name, value) view used by the JSON and CSV writers.
std::vector<std::pair<std::string, double>>
timing_fields(const PhaseTimings &timings);

struct ClassEdge {
  std::string from;
  std::string to;
  auto operator<=>(const ClassEdge &) const = default;
  bool self_loop() const { return from == to; }
};

struct ChainStatistics {
  std::size_t total_errors = 0;
  std::map<ErrorKind, std::size_t> per_kind_counts;
  std::map<ErrorKind, std::size_t> per_kind_root_counts;
  std::size_t subsequent_count = 0;
  double avg_direct_subsequent_per_root = 0;
  double avg_preceding_per_subsequent = 0;
  /// Node counts of every dependent error tree (components with an edge).
  std::vector<std::size_t> tree_sizes;
  std::size_t trees_depth_ge_3 = 0;
  std::map<ClassEdge, std::size_t> class_dependency_edges;
};

} // namespace errchain
