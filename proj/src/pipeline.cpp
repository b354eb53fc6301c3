//===- pipeline.cpp -------------------------------------------------------===//

#include "errchain/pipeline.hpp"

#include <algorithm>
#include <chrono>

namespace errchain {

namespace {

using Clock = std::chrono::steady_clock;

/// Adds the time since construction (or the last lap) to a field.
class Stopwatch {
public:
  explicit Stopwatch(PhaseTimings *t) : timings_(t), last_(Clock::now()) {}

  void lap(double PhaseTimings::*field) {
    auto now = Clock::now();
    if (timings_)
      timings_->*field +=
          std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

private:
  PhaseTimings *timings_;
  Clock::time_point last_;
};

} // namespace

const ErrorReport *ReportDocument::find(std::string_view id) const {
  for (const auto &e : errors)
    if (e.id == id)
      return &e;
  return nullptr;
}

AnalysisRun analyze_program(const RuleSet &rules,
                            std::shared_ptr<const Program> program,
                            const AnalysisConfig &config,
                            PhaseTimings *timings) {
  config.validate();
  Stopwatch watch(timings);
  AnalysisRun run;
  run.program = std::move(program);
  const Program &prog = *run.program;

  run.paths = enumerate_paths(prog, config.max_paths);
  run.seeds = detect_seeds(prog, run.paths, rules);
  watch.lap(&PhaseTimings::seed_detection_ms);

  std::vector<ErrorReport> errors;
  run.analyses.reserve(run.seeds.size());
  for (const auto &seed : run.seeds) {
    TypestateResult ts = run_typestate(seed, prog, run.paths);
    SeedAnalysis a;
    a.seed = &seed;
    a.firings = std::move(ts.firings);
    a.own_errors = std::move(ts.errors);
    for (auto &e : forbidden_method_check(seed, prog, run.paths))
      add_unique(a.own_errors, std::move(e));
    run.analyses.push_back(std::move(a));
  }
  watch.lap(&PhaseTimings::typestate_ms);

  for (auto &a : run.analyses) {
    ConstraintResult cr =
        evaluate_constraints(*a.seed, a.firings, config.bet_enabled);
    for (auto &e : cr.errors)
      add_unique(a.own_errors, std::move(e));
    a.requirements =
        resolve_required(*a.seed, a.firings, cr.guard_env, config.bet_enabled);
  }
  watch.lap(&PhaseTimings::constraints_ms);

  run.propagation = propagate(run.analyses, config.sed_enabled);
  watch.lap(&PhaseTimings::propagation_ms);

  for (const auto &a : run.analyses)
    for (const auto &e : a.own_errors)
      add_unique(errors, e);
  for (const auto &e : run.propagation.rp_errors)
    add_unique(errors, e);
  map_subsequent(errors, run.propagation, config.sed_enabled);
  std::sort(errors.begin(), errors.end(), report_order);
  run.report.graph = ChainGraph(errors);
  watch.lap(&PhaseTimings::chain_mapping_ms);

  ReportDocument &doc = run.report;
  doc.config = config;
  doc.roles = classify(errors);
  doc.stats = compute_stats(errors, doc.graph);
  doc.errors = std::move(errors);
  watch.lap(&PhaseTimings::reporting_ms);
  return run;
}

std::shared_ptr<const Program>
load_program(const std::filesystem::path &program_file) {
  std::string text = read_text_file(program_file);
  return std::make_shared<const Program>(
      parse_program(text, program_file.filename().string()));
}

ReportDocument analyze(const std::filesystem::path &rules_dir,
                       const std::filesystem::path &program_file,
                       const AnalysisConfig &config) {
  config.validate();
  PhaseTimings timings;
  PhaseTimings *t = config.collect_timings ? &timings : nullptr;
  auto start = Clock::now();
  Stopwatch watch(t);

  RuleSet rules = load_rules(rules_dir);
  watch.lap(&PhaseTimings::rule_parse_ms);
  auto program = load_program(program_file);
  watch.lap(&PhaseTimings::program_parse_ms);

  ReportDocument doc =
      std::move(analyze_program(rules, std::move(program), config, t).report);
  if (t) {
    timings.total_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    doc.timings = timings;
  }
  return doc;
}

} // namespace errchain
