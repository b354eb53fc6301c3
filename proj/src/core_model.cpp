//===- core_model.cpp -----------------------------------------------------===//

#include "errchain/core_model.hpp"

#include <stdexcept>

namespace errchain {

namespace {

struct KindInfo {
  ErrorKind kind;
  std::string_view tag;
  std::string_view display;
  std::string_view abbrev;
};

constexpr std::array<KindInfo, 7> kKindInfo = {{
    {ErrorKind::Constraint, "CONSTRAINT", "ConstraintError", "CE"},
    {ErrorKind::RequiredPredicate, "REQUIRED_PREDICATE",
     "RequiredPredicateError", "RPE"},
    {ErrorKind::Typestate, "TYPESTATE", "TypestateError", "TSE"},
    {ErrorKind::IncompleteOperation, "INCOMPLETE_OPERATION",
     "IncompleteOperationError", "IOE"},
    {ErrorKind::HardCoded, "HARD_CODED", "HardCodedError", "HCE"},
    {ErrorKind::NeverTypeOf, "NEVER_TYPE_OF", "NeverTypeOfError", "NTE"},
    {ErrorKind::ForbiddenMethod, "FORBIDDEN_METHOD", "ForbiddenMethodError",
     "FME"},
}};

const KindInfo &info(ErrorKind kind) {
  for (const auto &entry : kKindInfo)
    if (entry.kind == kind)
      return entry;
  throw std::logic_error("unknown ErrorKind");
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      out += c;
    }
  }
  return out;
}

} // namespace

std::string_view to_tag(ErrorKind kind) { return info(kind).tag; }

std::string_view display_name(ErrorKind kind) { return info(kind).display; }

std::optional<ErrorKind> parse_error_kind(std::string_view tag) {
  for (const auto &entry : kKindInfo)
    if (entry.tag == tag)
      return entry.kind;
  return std::nullopt;
}

std::string Literal::spelling() const {
  switch (kind) {
  case LiteralKind::String:
    return "\"" + escape(text) + "\"";
  case LiteralKind::Int:
    return std::to_string(number);
  case LiteralKind::Bytes:
    return "bytes(\"" + escape(text) + "\")";
  }
  return {};
}

std::string_view Literal::type_name() const {
  switch (kind) {
  case LiteralKind::String:
    return "String";
  case LiteralKind::Int:
    return "Int";
  case LiteralKind::Bytes:
    return "Bytes";
  }
  return {};
}

std::string ValueId::str() const {
  std::string out = def_site == 0 ? "param" + std::to_string(slot)
                                  : "v" + std::to_string(def_site);
  if (def_site != 0 && slot >= 0)
    out += "." + std::to_string(slot);
  for (int site : context)
    out += "@" + std::to_string(site);
  return out;
}

std::string make_error_id(ErrorKind kind, const SourceLocation &location,
                          std::string_view seed_id,
                          const std::optional<std::string> &predicate_name) {
  std::string id(info(kind).abbrev);
  id += ':';
  id += std::to_string(location.statement_id);
  id += ':';
  id += seed_id;
  if (predicate_name) {
    id += ':';
    id += *predicate_name;
  }
  return id;
}

bool report_order(const ErrorReport &a, const ErrorReport &b) {
  if (a.location.statement_id != b.location.statement_id)
    return a.location.statement_id < b.location.statement_id;
  if (a.kind != b.kind)
    return a.kind < b.kind;
  return a.id < b.id;
}

void AnalysisConfig::validate() const {
  if (bet_enabled && !sed_enabled)
    throw std::invalid_argument(
        "backward error tracking requires subsequent error detection");
  if (max_paths == 0)
    throw std::invalid_argument("max_paths must be positive");
}

std::vector<std::pair<std::string, double>>
timing_fields(const PhaseTimings &t) {
  return {{"rule_parse_ms", t.rule_parse_ms},
          {"program_parse_ms", t.program_parse_ms},
          {"seed_detection_ms", t.seed_detection_ms},
          {"typestate_ms", t.typestate_ms},
          {"constraints_ms", t.constraints_ms},
          {"propagation_ms", t.propagation_ms},
          {"chain_mapping_ms", t.chain_mapping_ms},
          {"reporting_ms", t.reporting_ms},
          {"total_ms", t.total_ms}};
}

} // namespace errchain
