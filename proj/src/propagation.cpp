//===- propagation.cpp ----------------------------------------------------===//

#include "errchain/propagation.hpp"

#include <algorithm>
#include <stdexcept>

namespace errchain {

namespace {

bool matches_after(const RuleSpec &spec, const EnsuredPredicateSpec &ens,
                   const std::string &label) {
  if (!ens.after_label)
    return true;
  auto labels = spec.expand_label(*ens.after_label);
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

/// Value the predicate lands on for this firing, if any.
std::optional<ValueId> ensure_target(const Seed &seed,
                                     const EnsuredPredicateSpec &ens,
                                     const EventFiring &firing) {
  switch (ens.target.kind) {
  case EnsureTarget::Kind::This:
    return seed.value;
  case EnsureTarget::Kind::Return:
    return firing.result;
  case EnsureTarget::Kind::Param: {
    auto it = firing.bindings.find(ens.target.param);
    if (it == firing.bindings.end())
      return std::nullopt;
    return it->second.value;
  }
  }
  return std::nullopt;
}

bool qualifies(const CompiledRule &rule, const EnsuredPredicateSpec &ens,
               const EventFiring &firing) {
  if (!firing.valid_transition)
    return false;
  if (ens.after_label)
    return matches_after(rule.spec, ens, firing.label);
  return rule.fsm.is_accepting(firing.resulting_state);
}

void merge_into(EnsuredSet &into, const EnsuredSet &from) {
  for (const auto &[key, paths] : from)
    into[key].insert(paths.begin(), paths.end());
}

std::size_t universe_size(std::span<const SeedAnalysis> seeds) {
  std::size_t n = 0;
  for (const auto &a : seeds)
    n += a.seed->rule->spec.ensured.size() * (a.firings.size() + 1);
  return n;
}

void sort_instances(PredicateEnvironment &env) {
  for (auto &[value, instances] : env)
    std::sort(instances.begin(), instances.end(),
              [](const PredicateInstance &a, const PredicateInstance &b) {
                return std::tie(a.producing_seed, a.name, a.status) <
                       std::tie(b.producing_seed, b.name, b.status);
              });
}

} // namespace

bool is_blocking(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Constraint:
  case ErrorKind::HardCoded:
  case ErrorKind::NeverTypeOf:
  case ErrorKind::ForbiddenMethod:
  case ErrorKind::Typestate:
    return true;
  case ErrorKind::RequiredPredicate:
  case ErrorKind::IncompleteOperation:
    return false;
  }
  return false;
}

PredicateLookup predicate_lookup(const PredicateEnvironment &env,
                                 const ValueId &value,
                                 std::string_view predicate) {
  PredicateLookup out;
  auto it = env.find(value);
  if (it == env.end())
    return out;
  for (const auto &inst : it->second) {
    if (inst.name != predicate)
      continue;
    if (inst.status == PredicateStatus::Ensured)
      return {LookupStatus::Ensured, {}};
    out.status = LookupStatus::Hidden;
    out.causes.insert(inst.cause_error_ids.begin(), inst.cause_error_ids.end());
  }
  return out;
}

EnsuredSet ensured_set(const PredicateEnvironment &env) {
  EnsuredSet out;
  for (const auto &[value, instances] : env)
    for (const auto &inst : instances)
      if (inst.status == PredicateStatus::Ensured)
        out[{inst.producing_seed, inst.name, value}].insert(inst.paths.begin(),
                                                            inst.paths.end());
  return out;
}

bool requirement_satisfied(const ActiveRequirement &req,
                           const EnsuredSet &ensured) {
  std::set<int> covered;
  for (const auto &[key, paths] : ensured)
    if (std::get<1>(key) == req.predicate && std::get<2>(key) == req.value)
      covered.insert(paths.begin(), paths.end());
  return std::includes(covered.begin(), covered.end(), req.paths.begin(),
                       req.paths.end());
}

EnsuredSet seed_contribution(const SeedAnalysis &analysis,
                             const EnsuredSet &ensured) {
  const Seed &seed = *analysis.seed;
  const CompiledRule &rule = *seed.rule;
  EnsuredSet out;
  if (std::any_of(analysis.own_errors.begin(), analysis.own_errors.end(),
                  [](const ErrorReport &e) { return is_blocking(e.kind); }))
    return out;
  for (const auto &req : analysis.requirements)
    if (!requirement_satisfied(req, ensured))
      return out;

  for (const auto &ens : rule.spec.ensured) {
    for (const auto &firing : analysis.firings) {
      if (!qualifies(rule, ens, firing))
        continue;
      if (auto target = ensure_target(seed, ens, firing))
        out[{seed.id, ens.predicate, *target}].insert(firing.path_id);
    }
  }
  return out;
}

PropagationResult propagate(std::span<const SeedAnalysis> seeds,
                            bool sed_enabled) {
  PropagationResult result;

  // Least fixpoint: nothing is ensured until some seed establishes it.
  EnsuredSet ensured;
  std::size_t bound = universe_size(seeds) + 2;
  for (result.rounds = 1;; ++result.rounds) {
    EnsuredSet next;
    for (const auto &a : seeds)
      merge_into(next, seed_contribution(a, ensured));
    if (next == ensured)
      break;
    ensured = std::move(next);
    if (static_cast<std::size_t>(result.rounds) > bound)
      throw std::logic_error("predicate propagation did not converge");
  }

  for (const auto &[key, paths] : ensured) {
    PredicateInstance inst;
    inst.producing_seed = std::get<0>(key);
    inst.name = std::get<1>(key);
    inst.target_value = std::get<2>(key);
    inst.status = PredicateStatus::Ensured;
    inst.paths = paths;
    result.env[inst.target_value].push_back(std::move(inst));
  }

  // Unsatisfied requirements become REQUIRED_PREDICATE errors.
  std::map<std::string, std::set<std::string>> rp_ids_by_seed;
  for (const auto &a : seeds) {
    for (const auto &req : a.requirements) {
      if (requirement_satisfied(req, ensured))
        continue;
      ErrorReport err;
      err.kind = ErrorKind::RequiredPredicate;
      err.location = req.location;
      err.rule_class = a.seed->class_name();
      err.seed_id = a.seed->id;
      err.predicate_name = req.predicate;
      err.id = make_error_id(err.kind, err.location, err.seed_id,
                             err.predicate_name);
      err.message = "Predicate " + req.predicate + " is not ensured on " +
                    "parameter " + req.param + " of " + err.rule_class + ".";
      result.unsatisfied.push_back({err.id, req});
      rp_ids_by_seed[a.seed->id].insert(err.id);
      add_unique(result.rp_errors, std::move(err));
    }
  }

  if (sed_enabled) {
    for (const auto &a : seeds) {
      const Seed &seed = *a.seed;
      std::set<std::string> causes = rp_ids_by_seed[seed.id];
      for (const auto &e : a.own_errors)
        causes.insert(e.id);
      if (causes.empty())
        continue;

      for (const auto &ens : seed.rule->spec.ensured) {
        std::map<ValueId, std::set<int>> targets;
        if (ens.target.kind == EnsureTarget::Kind::This) {
          targets[seed.value] = seed.paths;
        } else {
          for (const auto &firing : a.firings) {
            if (!matches_after(seed.rule->spec, ens, firing.label))
              continue;
            if (auto t = ensure_target(seed, ens, firing))
              targets[*t].insert(firing.path_id);
          }
        }
        for (auto &[target, paths] : targets) {
          if (ensured.contains({seed.id, ens.predicate, target}))
            continue;
          PredicateInstance inst;
          inst.producing_seed = seed.id;
          inst.name = ens.predicate;
          inst.target_value = target;
          inst.status = PredicateStatus::Hidden;
          inst.cause_error_ids = causes;
          inst.paths = std::move(paths);
          result.env[target].push_back(std::move(inst));
        }
      }
    }
  }

  sort_instances(result.env);
  return result;
}

} // namespace errchain
