//===- bench.hpp - Configuration benchmark harness -------------*- C++ -*-===//

#pragma once

#include "errchain/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace errchain {

struct BenchConfig {
  std::string name;
  AnalysisConfig config;
};

/// `sast` and `subs-off` run with SED and BET off, `subs-on` with SED only,
/// `subs-bet` with both. The first is the overhead baseline.
const std::vector<BenchConfig> &bench_configs();
std::optional<BenchConfig> find_bench_config(std::string_view name);

struct BenchSample {
  std::string program;
  std::string config;
  int rep = 0;
  PhaseTimings timings;
};

struct BenchSummaryRow {
  std::string program;
  std::string config;
  double total_median_ms = 0;
  /// Relative to `sast` on the same program; empty for the baseline or
  /// when `sast` was not measured.
  std::optional<double> overhead_vs_sast_pct;
};

/// Program name used for the rows aggregating the whole corpus.
inline constexpr std::string_view kOverallProgram = "ALL";

struct BenchResult {
  std::vector<BenchSample> samples;
  /// Per (program, config) rows, then one overall row per config whose
  /// values are medians over the per-program rows.
  std::vector<BenchSummaryRow> summary;
};

/// Runs every corpus program (`*.mprog`, sorted) under every config `reps`
/// times. Repetitions are interleaved across programs and configs and each
/// (program, config) pair gets one untimed warm-up run first. Every program
/// is parsed up front; a failure aborts with the file named.
BenchResult run_bench(const std::filesystem::path &rules_dir,
                      const std::filesystem::path &corpus_dir, int reps,
                      const std::vector<std::string> &configs);

double median(std::vector<double> values);

/// `program,config,rep,phase,ms`, one row per phase and sample.
void write_raw_csv(std::ostream &os, const BenchResult &result);
/// `program,config,total_median_ms,overhead_vs_sast_pct`.
void write_summary_csv(std::ostream &os, const BenchResult &result);

/// `out.csv` -> `out_summary.csv` in the same directory.
std::filesystem::path summary_path(const std::filesystem::path &raw_csv);

} // namespace errchain
