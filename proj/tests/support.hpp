//===- support.hpp - Shared test helpers -----------------------*- C++ -*-===//

#pragma once

#include "errchain/pipeline.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace errchain::test {

std::filesystem::path asset_dir();
std::filesystem::path rules_dir();
std::filesystem::path corpus_dir();
std::filesystem::path corpus_file(std::string_view name);
/// Every bundled corpus program, sorted by file name.
std::vector<std::filesystem::path> corpus_files();

/// The bundled rule set, loaded once.
const RuleSet &bundled_rules();

/// Parses `texts` as rule documents named rule0, rule1, ...
RuleSet rules_from_text(const std::vector<std::string> &texts);

AnalysisConfig make_config(bool sed, bool bet);

/// Runs the analysis on program text against the bundled rules (or `rules`).
AnalysisRun run_text(std::string_view text, AnalysisConfig config = {},
                     const RuleSet *rules = nullptr,
                     const std::string &file = "test.mprog");

AnalysisRun run_corpus(std::string_view name, AnalysisConfig config = {});

/// (id, kind, location) of every error, sorted; link fields dropped.
struct BaseError {
  std::string id;
  ErrorKind kind;
  SourceLocation location;
  auto operator<=>(const BaseError &) const = default;
};
std::vector<BaseError> base_errors(const std::vector<ErrorReport> &errors);

std::vector<std::string> ids_of_kind(const ReportDocument &report,
                                     ErrorKind kind);

/// The single seed of class `cls` created at `stmt`; throws otherwise.
const Seed &seed_at(const AnalysisRun &run, std::string_view cls, int stmt);

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

/// Runs the command-line tool with `args` through the shell and captures
/// its standard output.
CommandResult run_cli(const std::string &args);

/// Firings recorded for a seed.
std::vector<EventFiring> firings_of(const AnalysisRun &run,
                                    std::string_view seed_id);

} // namespace errchain::test
