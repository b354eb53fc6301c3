//===- pipeline.hpp - End-to-end analysis ----------------------*- C++ -*-===//

#pragma once

#include "errchain/chains.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace errchain {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct ReportDocument {
  std::string version{kToolVersion};
  AnalysisConfig config;
  /// Sorted with report_order; links filled when SED is on.
  std::vector<ErrorReport> errors;
  std::map<std::string, ErrorRole> roles;
  ChainGraph graph;
  ChainStatistics stats;
  std::optional<PhaseTimings> timings;

  const ErrorReport *find(std::string_view id) const;
};

/// Intermediate results, kept for inspection by tests and tools. Seeds and
/// paths point into `program`, which is therefore held by pointer.
struct AnalysisRun {
  std::shared_ptr<const Program> program;
  std::vector<ExecutionPath> paths;
  std::vector<Seed> seeds;
  std::vector<SeedAnalysis> analyses;
  PropagationResult propagation;
  ReportDocument report;
};

/// Runs every phase after parsing. Throws PathBudgetExceeded when the
/// program has more than `config.max_paths` paths. `timings`, when given,
/// receives the per-phase durations of this call.
AnalysisRun analyze_program(const RuleSet &rules,
                            std::shared_ptr<const Program> program,
                            const AnalysisConfig &config,
                            PhaseTimings *timings = nullptr);

/// Loads rules and program from disk and analyzes. Throws InputError (or a
/// subclass) for unreadable or malformed input, PathBudgetExceeded as
/// above, std::invalid_argument for an invalid configuration.
ReportDocument analyze(const std::filesystem::path &rules_dir,
                       const std::filesystem::path &program_file,
                       const AnalysisConfig &config);

std::shared_ptr<const Program>
load_program(const std::filesystem::path &program_file);

} // namespace errchain
