//===- errchain_main.cpp - Command-line driver ----------------------------===//

#include "errchain/bench.hpp"
#include "errchain/errors.hpp"
#include "errchain/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitFindings = 1;
constexpr int kExitInput = 2;
constexpr int kExitPathBudget = 3;

struct AnalyzeOptions {
  std::string rules;
  std::string program;
  std::string sed = "on";
  /// Follows --sed when not given.
  std::string bet;
  std::string format = "text";
  bool group_chains = false;
  bool timings = false;
  bool fail_on_findings = false;
  std::size_t max_paths = errchain::AnalysisConfig{}.max_paths;
  std::string out;
};

struct BenchOptions {
  std::string rules;
  std::string corpus;
  int reps = 10;
  std::vector<std::string> configs = {"sast", "subs-off", "subs-on",
                                      "subs-bet"};
  std::string out;
};

bool write_output(const std::string &path, const std::string &text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int run_analyze(const AnalyzeOptions &opts) {
  errchain::AnalysisConfig config;
  config.sed_enabled = opts.sed == "on";
  config.bet_enabled = (opts.bet.empty() ? opts.sed : opts.bet) == "on";
  config.max_paths = opts.max_paths;
  config.collect_timings = opts.timings;

  errchain::ReportDocument report =
      errchain::analyze(opts.rules, opts.program, config);
  std::string text = opts.format == "json"
                         ? errchain::render_json(report)
                         : errchain::render_text(report, opts.group_chains);
  if (opts.timings && opts.format == "text") {
    std::ostringstream os;
    os << "\nTimings (ms):\n";
    for (const auto &[name, ms] : errchain::timing_fields(*report.timings))
      os << "  " << name << ": " << ms << "\n";
    text += os.str();
  }
  if (!write_output(opts.out, text))
    return kExitInput;
  return opts.fail_on_findings && !report.errors.empty() ? kExitFindings : 0;
}

int run_bench(const BenchOptions &opts) {
  errchain::BenchResult result =
      errchain::run_bench(opts.rules, opts.corpus, opts.reps, opts.configs);
  std::ostringstream raw, summary;
  errchain::write_raw_csv(raw, result);
  errchain::write_summary_csv(summary, result);
  if (!write_output(opts.out, raw.str()))
    return kExitInput;
  if (!write_output(errchain::summary_path(opts.out).string(), summary.str()))
    return kExitInput;
  std::cerr << summary.str();
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Cryptographic API misuse analyzer with error chains"};
  app.require_subcommand(1);
  const std::vector<std::string> on_off = {"on", "off"};

  AnalyzeOptions a;
  auto *analyze = app.add_subcommand("analyze", "Analyze one program");
  analyze->add_option("--rules", a.rules, "Directory of .crule files")
      ->required();
  analyze->add_option("--program", a.program, "Program file (.mprog)")
      ->required();
  analyze->add_option("--sed", a.sed, "Subsequent error detection")
      ->check(CLI::IsMember(on_off));
  analyze
      ->add_option("--bet", a.bet,
                   "Backward error tracking (default: same as --sed)")
      ->check(CLI::IsMember(on_off));
  analyze->add_option("--format", a.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_flag("--group-chains", a.group_chains,
                    "Group subsequent errors under their root errors");
  analyze->add_flag("--timings", a.timings, "Report phase timings");
  analyze->add_flag("--fail-on-findings", a.fail_on_findings,
                    "Exit with status 1 when errors are reported");
  analyze->add_option("--max-paths", a.max_paths,
                      "Maximum number of execution paths")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--out", a.out, "Write the report to a file");

  BenchOptions b;
  auto *bench = app.add_subcommand("bench", "Benchmark the configurations");
  bench->add_option("--rules", b.rules, "Directory of .crule files")
      ->required();
  bench->add_option("--corpus", b.corpus, "Directory of .mprog files")
      ->required();
  bench->add_option("--reps", b.reps, "Timed repetitions")
      ->check(CLI::PositiveNumber);
  bench->add_option("--configs", b.configs, "Configurations to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"sast", "subs-off", "subs-on", "subs-bet"}));
  bench->add_option("--out", b.out, "Raw CSV output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (analyze->parsed())
      return run_analyze(a);
    return run_bench(b);
  } catch (const errchain::PathBudgetExceeded &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPathBudget;
  } catch (const errchain::InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
