//===- rule_set.cpp -------------------------------------------------------===//

#include "errchain/rule_set.hpp"

#include "errchain/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace errchain {

std::vector<const EventDef *> CompiledRule::events_for(std::string_view method,
                                                       std::size_t arity) const {
  std::vector<const EventDef *> out;
  for (const auto &ev : spec.events)
    if (ev.method == method && ev.params.size() == arity)
      out.push_back(&ev);
  return out;
}

CompiledRule compile_rule(RuleSpec spec) {
  Fsm fsm = build_fsm(spec.order, spec.aggregates);
  for (std::size_t i = 0; i < spec.ensured.size(); ++i) {
    const auto &after = spec.ensured[i].after_label;
    if (!after)
      continue;
    for (const auto &label : spec.expand_label(*after))
      fsm.ensuring_points[label].push_back(i);
  }
  return {std::move(spec), std::move(fsm)};
}

RuleSet::RuleSet(std::vector<RuleSpec> specs) {
  rules_.reserve(specs.size());
  for (auto &spec : specs)
    rules_.push_back(compile_rule(std::move(spec)));
}

const CompiledRule *RuleSet::find(std::string_view class_name) const {
  for (const auto &rule : rules_)
    if (rule.spec.class_name == class_name)
      return &rule;
  return nullptr;
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<RuleDocument> read_rule_directory(const std::filesystem::path &dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw InputError("rules directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".crule")
      files.push_back(entry.path());
  if (ec)
    throw InputError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<RuleDocument> docs;
  for (const auto &file : files)
    docs.push_back({file.filename().string(), read_text_file(file)});
  return docs;
}

RuleSet load_rules(const std::filesystem::path &dir) {
  return RuleSet(parse_rules(read_rule_directory(dir)));
}

} // namespace errchain
