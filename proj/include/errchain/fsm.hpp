//===- fsm.hpp - Deterministic typestate automata --------------*- C++ -*-===//

#pragma once

#include "errchain/rule_spec.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace errchain {

enum class TraceVerdict { Accept, Prefix, Reject };

std::string_view to_string(TraceVerdict verdict);

/// Deterministic automaton over event labels. State 0 is the start state.
/// Every state is reachable from the start; there is no explicit trap
/// state, a missing transition is the typestate violation signal.
class Fsm {
public:
  using State = int;

  State start() const { return 0; }
  std::size_t state_count() const { return accepting_.size(); }
  bool is_accepting(State s) const;

  /// Successor of `s` on `label`, or nullopt when no transition exists.
  /// Throws std::out_of_range for an unknown state.
  std::optional<State> step(State s, std::string_view label) const;

  /// Labels with an outgoing transition from `s`, sorted.
  std::vector<std::string> enabled(State s) const;

  /// True if some accepting state is reachable from `s`.
  bool can_complete(State s) const;

  TraceVerdict check(std::span<const std::string> trace) const;

  /// Sorted event-label alphabet.
  const std::vector<std::string> &alphabet() const { return alphabet_; }

  const std::map<std::pair<State, std::string>, State> &transitions() const {
    return transitions_;
  }

  /// Event label -> indices into RuleSpec::ensured of predicates whose
  /// `after` label covers that event.
  std::map<std::string, std::vector<std::size_t>> ensuring_points;

private:
  friend Fsm build_fsm(const OrderExpr &, const std::vector<Aggregate> &);

  std::vector<std::string> alphabet_;
  std::vector<bool> accepting_;
  std::vector<bool> live_;
  std::map<std::pair<State, std::string>, State> transitions_;
};

/// Thompson construction over the expanded ORDER expression followed by
/// subset construction. Aggregate labels expand to the alternation of their
/// members.
Fsm build_fsm(const OrderExpr &order, const std::vector<Aggregate> &aggregates);

/// ACCEPT if the trace is in the language, PREFIX if it can still be
/// completed to an accepted word, REJECT otherwise.
inline TraceVerdict fsm_language_check(const Fsm &fsm,
                                       std::span<const std::string> trace) {
  return fsm.check(trace);
}

} // namespace errchain
