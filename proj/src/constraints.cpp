//===- constraints.cpp ----------------------------------------------------===//

#include "errchain/constraints.hpp"

#include <algorithm>
#include <tuple>

namespace errchain {

namespace {

std::string literal_list(const std::vector<Literal> &values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += (i ? ", " : "") + values[i].spelling();
  return out + "}";
}

ErrorReport make_report(ErrorKind kind, const Seed &seed,
                        const EventFiring &firing, std::string message) {
  ErrorReport err;
  err.kind = kind;
  err.location = firing.location;
  err.rule_class = seed.class_name();
  err.seed_id = seed.id;
  err.id = make_error_id(kind, err.location, seed.id, std::nullopt);
  err.message = std::move(message);
  return err;
}

/// Checks one constraint body against one binding; returns a report when
/// the binding violates it.
std::optional<ErrorReport> check_body(const ConstraintExpr::Body &body,
                                      const Seed &seed,
                                      const EventFiring &firing,
                                      const ArgBinding &arg) {
  const std::string &cls = seed.class_name();
  if (const auto *vc = std::get_if<ValueCondition>(&body)) {
    if (!arg.literals)
      return std::nullopt;
    for (const Literal &lit : *arg.literals) {
      if (vc->holds_for(lit))
        continue;
      return make_report(ErrorKind::Constraint, seed, firing,
                         "Parameter " + vc->param + " of " + cls + " is " +
                             lit.spelling() + "; expected " +
                             (vc->equality ? vc->values.front().spelling()
                                           : "one of " +
                                                 literal_list(vc->values)) +
                             ".");
    }
    return std::nullopt;
  }
  if (const auto *nt = std::get_if<NeverTypeOf>(&body)) {
    if (!arg.types.contains(nt->type_name))
      return std::nullopt;
    return make_report(ErrorKind::NeverTypeOf, seed, firing,
                       "Parameter " + nt->param + " of " + cls +
                           " must never be of type " + nt->type_name + ".");
  }
  const auto &hc = std::get<NotHardCoded>(body);
  if (!arg.literals || arg.literals->empty())
    return std::nullopt;
  return make_report(ErrorKind::HardCoded, seed, firing,
                     "Parameter " + hc.param + " of " + cls +
                         " is the hard-coded constant " +
                         arg.literals->begin()->spelling() + ".");
}

Truth guard_truth(const ValueCondition &guard, const GuardEnv &env,
                  std::span<const EventFiring> firings) {
  auto it = env.find(print_condition(guard));
  return it != env.end() ? it->second : evaluate_guard(guard, firings);
}

} // namespace

std::string_view to_string(Truth truth) {
  switch (truth) {
  case Truth::False:
    return "false";
  case Truth::True:
    return "true";
  case Truth::Unknown:
    return "unknown";
  }
  return "unknown";
}

Truth evaluate_guard(const ValueCondition &guard,
                     std::span<const EventFiring> firings) {
  bool bound = false;
  bool all_known = true;
  for (const auto &firing : firings) {
    auto it = firing.bindings.find(guard.param);
    if (it == firing.bindings.end())
      continue;
    bound = true;
    if (!it->second.literals) {
      all_known = false;
      continue;
    }
    for (const Literal &lit : *it->second.literals)
      if (guard.holds_for(lit))
        return Truth::True;
  }
  return bound && all_known ? Truth::False : Truth::Unknown;
}

ConstraintResult evaluate_constraints(const Seed &seed,
                                      std::span<const EventFiring> firings,
                                      bool /*bet_enabled*/) {
  const RuleSpec &spec = seed.rule->spec;
  ConstraintResult result;

  for (const auto &c : spec.constraints)
    for (const auto &g : c.guards)
      result.guard_env.emplace(print_condition(g), evaluate_guard(g, firings));
  for (const auto &req : spec.required)
    if (req.guard)
      result.guard_env.emplace(print_condition(*req.guard),
                               evaluate_guard(*req.guard, firings));

  for (const auto &c : spec.constraints) {
    bool active = std::all_of(c.guards.begin(), c.guards.end(),
                              [&](const ValueCondition &g) {
                                return result.guard_env.at(
                                           print_condition(g)) == Truth::True;
                              });
    if (!active)
      continue;
    for (const auto &firing : firings) {
      auto it = firing.bindings.find(c.param());
      if (it == firing.bindings.end())
        continue;
      if (auto err = check_body(c.body, seed, firing, it->second))
        add_unique(result.errors, std::move(*err));
    }
  }
  return result;
}

std::vector<ActiveRequirement>
resolve_required(const Seed &seed, std::span<const EventFiring> firings,
                 const GuardEnv &guard_env, bool bet_enabled) {
  const RuleSpec &spec = seed.rule->spec;
  std::vector<ActiveRequirement> out;

  for (const auto &req : spec.required) {
    if (bet_enabled && req.guard &&
        guard_truth(*req.guard, guard_env, firings) == Truth::False)
      continue;
    for (const auto &firing : firings) {
      auto it = firing.bindings.find(req.param);
      if (it == firing.bindings.end())
        continue;
      const ValueId &value = it->second.value;
      auto same = std::find_if(out.begin(), out.end(), [&](const auto &a) {
        return a.predicate == req.predicate && a.param == req.param &&
               a.value == value &&
               a.location.statement_id == firing.location.statement_id;
      });
      if (same != out.end()) {
        same->paths.insert(firing.path_id);
        continue;
      }
      ActiveRequirement active;
      active.predicate = req.predicate;
      active.param = req.param;
      active.value = value;
      active.location = firing.location;
      active.seed_id = seed.id;
      active.paths = {firing.path_id};
      out.push_back(std::move(active));
    }
  }
  return out;
}

} // namespace errchain
