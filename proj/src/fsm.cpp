//===- fsm.cpp - ORDER expression to deterministic automaton --------------===//

#include "errchain/fsm.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace errchain {

namespace {

/// Epsilon-NFA built by Thompson's construction.
class Nfa {
public:
  struct Fragment {
    int start;
    int accept;
  };

  int add_state() {
    eps_.emplace_back();
    edges_.emplace_back();
    return static_cast<int>(eps_.size()) - 1;
  }
  void add_eps(int from, int to) { eps_[from].push_back(to); }
  void add_edge(int from, const std::string &label, int to) {
    edges_[from].emplace_back(label, to);
  }

  std::set<int> closure(std::set<int> states) const {
    std::vector<int> work(states.begin(), states.end());
    while (!work.empty()) {
      int s = work.back();
      work.pop_back();
      for (int t : eps_[s])
        if (states.insert(t).second)
          work.push_back(t);
    }
    return states;
  }

  std::set<int> move(const std::set<int> &states,
                     const std::string &label) const {
    std::set<int> out;
    for (int s : states)
      for (const auto &[l, t] : edges_[s])
        if (l == label)
          out.insert(t);
    return out;
  }

  std::vector<std::string> alphabet() const {
    std::set<std::string> labels;
    for (const auto &out : edges_)
      for (const auto &edge : out)
        labels.insert(edge.first);
    return {labels.begin(), labels.end()};
  }

private:
  std::vector<std::vector<int>> eps_;
  std::vector<std::vector<std::pair<std::string, int>>> edges_;
};

class ThompsonBuilder {
public:
  ThompsonBuilder(Nfa &nfa, const std::vector<Aggregate> &aggregates)
      : nfa_(nfa), aggregates_(aggregates) {}

  Nfa::Fragment build(const OrderExpr &expr, int depth = 0) {
    using Kind = OrderExpr::Kind;
    switch (expr.kind) {
    case Kind::Label:
      return build_label(expr.label, depth);
    case Kind::Sequence: {
      Nfa::Fragment first = build(expr.children.front(), depth);
      Nfa::Fragment last = first;
      for (std::size_t i = 1; i < expr.children.size(); ++i) {
        Nfa::Fragment next = build(expr.children[i], depth);
        nfa_.add_eps(last.accept, next.start);
        last = next;
      }
      return {first.start, last.accept};
    }
    case Kind::Alternation: {
      std::vector<Nfa::Fragment> arms;
      for (const auto &child : expr.children)
        arms.push_back(build(child, depth));
      return join(arms);
    }
    case Kind::Star:
    case Kind::Plus:
    case Kind::Optional: {
      Nfa::Fragment inner = build(expr.children.front(), depth);
      int s = nfa_.add_state();
      int a = nfa_.add_state();
      nfa_.add_eps(s, inner.start);
      nfa_.add_eps(inner.accept, a);
      if (expr.kind != Kind::Plus)
        nfa_.add_eps(s, a);
      if (expr.kind != Kind::Optional)
        nfa_.add_eps(inner.accept, inner.start);
      return {s, a};
    }
    }
    throw std::logic_error("unhandled OrderExpr kind");
  }

private:
  Nfa::Fragment build_label(const std::string &label, int depth) {
    auto agg = std::find_if(aggregates_.begin(), aggregates_.end(),
                            [&](const Aggregate &a) { return a.label == label; });
    if (agg == aggregates_.end()) {
      int s = nfa_.add_state();
      int a = nfa_.add_state();
      nfa_.add_edge(s, label, a);
      return {s, a};
    }
    if (depth > static_cast<int>(aggregates_.size()))
      throw std::invalid_argument("recursive aggregate " + label);
    std::vector<Nfa::Fragment> arms;
    for (const auto &m : agg->members)
      arms.push_back(build_label(m, depth + 1));
    return join(arms);
  }

  Nfa::Fragment join(const std::vector<Nfa::Fragment> &arms) {
    int s = nfa_.add_state();
    int a = nfa_.add_state();
    for (const auto &arm : arms) {
      nfa_.add_eps(s, arm.start);
      nfa_.add_eps(arm.accept, a);
    }
    return {s, a};
  }

  Nfa &nfa_;
  const std::vector<Aggregate> &aggregates_;
};

} // namespace

std::string_view to_string(TraceVerdict verdict) {
  switch (verdict) {
  case TraceVerdict::Accept:
    return "ACCEPT";
  case TraceVerdict::Prefix:
    return "PREFIX";
  case TraceVerdict::Reject:
    return "REJECT";
  }
  return {};
}

bool Fsm::is_accepting(State s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= accepting_.size())
    throw std::out_of_range("unknown FSM state " + std::to_string(s));
  return accepting_[s];
}

std::optional<Fsm::State> Fsm::step(State s, std::string_view label) const {
  if (s < 0 || static_cast<std::size_t>(s) >= accepting_.size())
    throw std::out_of_range("unknown FSM state " + std::to_string(s));
  auto it = transitions_.find({s, std::string(label)});
  if (it == transitions_.end())
    return std::nullopt;
  return it->second;
}

std::vector<std::string> Fsm::enabled(State s) const {
  std::vector<std::string> out;
  for (const auto &label : alphabet_)
    if (transitions_.contains({s, label}))
      out.push_back(label);
  return out;
}

bool Fsm::can_complete(State s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= live_.size())
    throw std::out_of_range("unknown FSM state " + std::to_string(s));
  return live_[s];
}

TraceVerdict Fsm::check(std::span<const std::string> trace) const {
  State s = start();
  for (const auto &label : trace) {
    auto next = step(s, label);
    if (!next)
      return TraceVerdict::Reject;
    s = *next;
  }
  if (accepting_[s])
    return TraceVerdict::Accept;
  return live_[s] ? TraceVerdict::Prefix : TraceVerdict::Reject;
}

Fsm build_fsm(const OrderExpr &order, const std::vector<Aggregate> &aggregates) {
  Nfa nfa;
  Nfa::Fragment top = ThompsonBuilder(nfa, aggregates).build(order);

  Fsm fsm;
  fsm.alphabet_ = nfa.alphabet();

  std::map<std::set<int>, Fsm::State> ids;
  std::vector<std::set<int>> subsets;
  std::deque<Fsm::State> work;

  auto intern = [&](std::set<int> subset) {
    auto [it, inserted] =
        ids.emplace(std::move(subset), static_cast<Fsm::State>(subsets.size()));
    if (inserted) {
      subsets.push_back(it->first);
      work.push_back(it->second);
    }
    return it->second;
  };

  intern(nfa.closure({top.start}));
  while (!work.empty()) {
    Fsm::State s = work.front();
    work.pop_front();
    for (const auto &label : fsm.alphabet_) {
      std::set<int> target = nfa.closure(nfa.move(subsets[s], label));
      if (target.empty())
        continue;
      fsm.transitions_[{s, label}] = intern(std::move(target));
    }
  }

  fsm.accepting_.resize(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    fsm.accepting_[i] = subsets[i].contains(top.accept);

  // Backward reachability from accepting states.
  fsm.live_ = fsm.accepting_;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &[key, to] : fsm.transitions_) {
      if (fsm.live_[to] && !fsm.live_[key.first]) {
        fsm.live_[key.first] = true;
        changed = true;
      }
    }
  }
  return fsm;
}

} // namespace errchain
