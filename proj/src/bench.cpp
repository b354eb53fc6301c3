//===- bench.cpp ----------------------------------------------------------===//

#include "errchain/bench.hpp"

#include "errchain/errors.hpp"
#include "errchain/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace errchain {

namespace {

std::vector<std::filesystem::path>
corpus_files(const std::filesystem::path &dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw InputError("corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".mprog")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

/// One analysis including rendering, as a user would run it.
PhaseTimings timed_run(const std::filesystem::path &rules_dir,
                       const std::filesystem::path &program,
                       AnalysisConfig config) {
  config.collect_timings = true;
  ReportDocument doc = analyze(rules_dir, program, config);
  auto start = std::chrono::steady_clock::now();
  std::string rendered = render_json(doc);
  double render_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  PhaseTimings t = *doc.timings;
  t.reporting_ms += render_ms;
  t.total_ms += render_ms;
  if (rendered.empty())
    throw std::logic_error("empty report");
  return t;
}

std::string format_ms(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

} // namespace

const std::vector<BenchConfig> &bench_configs() {
  static const std::vector<BenchConfig> configs = [] {
    auto make = [](std::string name, bool sed, bool bet) {
      AnalysisConfig c;
      c.sed_enabled = sed;
      c.bet_enabled = bet;
      return BenchConfig{std::move(name), c};
    };
    return std::vector<BenchConfig>{make("sast", false, false),
                                    make("subs-off", false, false),
                                    make("subs-on", true, false),
                                    make("subs-bet", true, true)};
  }();
  return configs;
}

std::optional<BenchConfig> find_bench_config(std::string_view name) {
  for (const auto &c : bench_configs())
    if (c.name == name)
      return c;
  return std::nullopt;
}

double median(std::vector<double> values) {
  if (values.empty())
    return 0;
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

BenchResult run_bench(const std::filesystem::path &rules_dir,
                      const std::filesystem::path &corpus_dir, int reps,
                      const std::vector<std::string> &configs) {
  if (reps < 1)
    throw std::invalid_argument("reps must be at least 1");
  std::vector<BenchConfig> selected;
  for (const auto &name : configs) {
    auto c = find_bench_config(name);
    if (!c)
      throw std::invalid_argument("unknown bench config '" + name + "'");
    selected.push_back(*c);
  }

  load_rules(rules_dir);
  auto programs = corpus_files(corpus_dir);
  for (const auto &p : programs) {
    try {
      load_program(p);
    } catch (const InputError &e) {
      throw InputError("corpus program " + p.filename().string() +
                       " failed to parse: " + e.what());
    }
  }

  for (const auto &p : programs)
    for (const auto &c : selected)
      timed_run(rules_dir, p, c.config);

  BenchResult result;
  for (int rep = 1; rep <= reps; ++rep)
    for (const auto &p : programs)
      for (const auto &c : selected)
        result.samples.push_back({p.filename().string(), c.name, rep,
                                  timed_run(rules_dir, p, c.config)});

  std::map<std::pair<std::string, std::string>, std::vector<double>> totals;
  for (const auto &s : result.samples)
    totals[{s.program, s.config}].push_back(s.timings.total_ms);

  bool have_sast = std::any_of(selected.begin(), selected.end(),
                               [](const auto &c) { return c.name == "sast"; });
  std::map<std::string, std::vector<double>> overall_ms, overall_pct;
  for (const auto &p : programs) {
    std::string prog = p.filename().string();
    double base = have_sast ? median(totals[{prog, "sast"}]) : 0;
    for (const auto &c : selected) {
      BenchSummaryRow row{prog, c.name, median(totals[{prog, c.name}]), {}};
      if (have_sast && c.name != "sast" && base > 0)
        row.overhead_vs_sast_pct = (row.total_median_ms - base) / base * 100;
      overall_ms[c.name].push_back(row.total_median_ms);
      if (row.overhead_vs_sast_pct)
        overall_pct[c.name].push_back(*row.overhead_vs_sast_pct);
      result.summary.push_back(std::move(row));
    }
  }
  for (const auto &c : selected) {
    BenchSummaryRow row{std::string(kOverallProgram), c.name,
                        median(overall_ms[c.name]), {}};
    if (!overall_pct[c.name].empty())
      row.overhead_vs_sast_pct = median(overall_pct[c.name]);
    result.summary.push_back(std::move(row));
  }
  return result;
}

void write_raw_csv(std::ostream &os, const BenchResult &result) {
  os << "program,config,rep,phase,ms\n";
  for (const auto &s : result.samples)
    for (const auto &[field, ms] : timing_fields(s.timings)) {
      std::string_view phase = field;
      if (phase.ends_with("_ms"))
        phase.remove_suffix(3);
      os << s.program << "," << s.config << "," << s.rep << "," << phase
         << "," << format_ms(ms) << "\n";
    }
}

void write_summary_csv(std::ostream &os, const BenchResult &result) {
  os << "program,config,total_median_ms,overhead_vs_sast_pct\n";
  for (const auto &r : result.summary) {
    os << r.program << "," << r.config << "," << format_ms(r.total_median_ms)
       << ",";
    if (r.overhead_vs_sast_pct)
      os << std::fixed << std::setprecision(2) << *r.overhead_vs_sast_pct;
    os << "\n";
  }
}

std::filesystem::path summary_path(const std::filesystem::path &raw_csv) {
  std::filesystem::path out = raw_csv;
  out.replace_filename(raw_csv.stem().string() + "_summary" +
                       (raw_csv.has_extension() ? raw_csv.extension().string()
                                                : std::string(".csv")));
  return out;
}

} // namespace errchain
