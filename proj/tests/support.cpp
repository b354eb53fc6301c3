//===- support.cpp --------------------------------------------------------===//

#include "support.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

#include <sys/wait.h>

namespace errchain::test {

std::filesystem::path asset_dir() { return ERRCHAIN_ASSET_DIR; }
std::filesystem::path rules_dir() { return asset_dir() / "rules"; }
std::filesystem::path corpus_dir() { return asset_dir() / "corpus"; }

std::filesystem::path corpus_file(std::string_view name) {
  return corpus_dir() / std::string(name);
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto &e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".mprog")
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

const RuleSet &bundled_rules() {
  static const RuleSet rules = load_rules(rules_dir());
  return rules;
}

RuleSet rules_from_text(const std::vector<std::string> &texts) {
  std::vector<RuleDocument> docs;
  for (std::size_t i = 0; i < texts.size(); ++i)
    docs.push_back({"rule" + std::to_string(i), texts[i]});
  return RuleSet(parse_rules(docs));
}

AnalysisConfig make_config(bool sed, bool bet) {
  AnalysisConfig c;
  c.sed_enabled = sed;
  c.bet_enabled = bet;
  return c;
}

AnalysisRun run_text(std::string_view text, AnalysisConfig config,
                     const RuleSet *rules, const std::string &file) {
  auto program = std::make_shared<const Program>(parse_program(text, file));
  return analyze_program(rules ? *rules : bundled_rules(), program, config);
}

AnalysisRun run_corpus(std::string_view name, AnalysisConfig config) {
  return analyze_program(bundled_rules(), load_program(corpus_file(name)),
                         config);
}

std::vector<BaseError> base_errors(const std::vector<ErrorReport> &errors) {
  std::vector<BaseError> out;
  for (const auto &e : errors)
    out.push_back({e.id, e.kind, e.location});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> ids_of_kind(const ReportDocument &report,
                                     ErrorKind kind) {
  std::vector<std::string> out;
  for (const auto &e : report.errors)
    if (e.kind == kind)
      out.push_back(e.id);
  return out;
}

const Seed &seed_at(const AnalysisRun &run, std::string_view cls, int stmt) {
  const Seed *found = nullptr;
  for (const auto &s : run.seeds) {
    if (s.class_name() != cls || s.creation.statement_id != stmt)
      continue;
    if (found)
      throw std::logic_error("several seeds match");
    found = &s;
  }
  if (!found)
    throw std::logic_error("no seed " + std::string(cls) + " at " +
                           std::to_string(stmt));
  return *found;
}

std::vector<EventFiring> firings_of(const AnalysisRun &run,
                                    std::string_view seed_id) {
  for (const auto &a : run.analyses)
    if (a.seed->id == seed_id)
      return a.firings;
  return {};
}

CommandResult run_cli(const std::string &args) {
  std::string cmd = std::string("\"") + ERRCHAIN_CLI + "\" " + args;
  CommandResult result;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return result;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

} // namespace errchain::test
