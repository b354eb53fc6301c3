//===- rule_set.hpp - Parsed and compiled rules ----------------*- C++ -*-===//

#pragma once

#include "errchain/fsm.hpp"
#include "errchain/rule_spec.hpp"

#include <filesystem>
#include <string_view>
#include <vector>

namespace errchain {

struct CompiledRule {
  RuleSpec spec;
  Fsm fsm;

  /// Events of this rule matching a call by method name and arity.
  std::vector<const EventDef *> events_for(std::string_view method,
                                           std::size_t arity) const;
};

CompiledRule compile_rule(RuleSpec spec);

class RuleSet {
public:
  RuleSet() = default;
  explicit RuleSet(std::vector<RuleSpec> specs);

  const CompiledRule *find(std::string_view class_name) const;
  const std::vector<CompiledRule> &rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

private:
  std::vector<CompiledRule> rules_;
};

/// Reads every `*.crule` file in `dir`, sorted by file name.
/// Throws InputError if the directory cannot be read.
std::vector<RuleDocument> read_rule_directory(const std::filesystem::path &dir);

RuleSet load_rules(const std::filesystem::path &dir);

std::string read_text_file(const std::filesystem::path &path);

} // namespace errchain
