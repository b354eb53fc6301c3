//===- typestate.cpp ------------------------------------------------------===//

#include "errchain/typestate.hpp"

#include <algorithm>
#include <tuple>

namespace errchain {

namespace {

std::string make_seed_id(const std::string &class_name, int stmt,
                         const std::vector<int> &context) {
  std::string id = class_name + "#" + std::to_string(stmt);
  for (int site : context)
    id += "@" + std::to_string(site);
  return id;
}

struct CallShape {
  std::string method;
  std::size_t arity = 0;
};

/// The (method, arity) a step presents to the seed, if the step concerns it.
std::optional<CallShape> seed_call(const Seed &seed, const PathStep &step) {
  bool creation = step.statement_id() == seed.creation.statement_id &&
                  step.context == seed.creation_context;
  if (creation) {
    if (const auto *s = step.stmt->as<NewStmt>())
      return CallShape{s->type_name, s->args.size()};
    if (const auto *s = step.stmt->as<StaticCallStmt>())
      return CallShape{s->method, s->args.size()};
    return std::nullopt;
  }
  if (const auto *s = step.stmt->as<InstanceCallStmt>())
    if (step.receiver && *step.receiver == seed.value)
      return CallShape{s->method, s->args.size()};
  return std::nullopt;
}

std::string join_methods(const CompiledRule &rule,
                         const std::vector<std::string> &labels) {
  std::vector<std::string> methods;
  for (const auto &label : labels)
    if (const EventDef *ev = rule.spec.find_event(label))
      if (std::find(methods.begin(), methods.end(), ev->method) ==
          methods.end())
        methods.push_back(ev->method);
  std::string out;
  for (std::size_t i = 0; i < methods.size(); ++i)
    out += (i ? ", " : "") + methods[i];
  return out.empty() ? "nothing" : out;
}

} // namespace

void add_unique(std::vector<ErrorReport> &reports, ErrorReport report) {
  for (const auto &r : reports)
    if (r.id == report.id)
      return;
  reports.push_back(std::move(report));
}

std::vector<Seed> detect_seeds(const Program &program,
                               std::span<const ExecutionPath> paths,
                               const RuleSet &rules) {
  std::map<std::pair<int, std::vector<int>>, Seed> found;
  for (const auto &path : paths) {
    for (const auto &step : path.steps) {
      const CompiledRule *rule = nullptr;
      if (const auto *s = step.stmt->as<NewStmt>()) {
        rule = rules.find(s->type_name);
        if (rule && !rule->spec.has_constructor_event() &&
            !rule->spec.is_forbidden(s->type_name,
                                     static_cast<int>(s->args.size())))
          rule = nullptr;
      } else if (const auto *s = step.stmt->as<StaticCallStmt>()) {
        rule = rules.find(s->type_name);
        if (rule) {
          auto candidates = rule->events_for(s->method, s->args.size());
          bool enabled = std::any_of(
              candidates.begin(), candidates.end(), [&](const EventDef *ev) {
                return rule->fsm.step(rule->fsm.start(), ev->label).has_value();
              });
          if (!enabled)
            rule = nullptr;
        }
      }
      if (!rule)
        continue;

      auto key = std::make_pair(step.statement_id(), step.context);
      auto it = found.find(key);
      if (it == found.end()) {
        Seed seed;
        seed.id = make_seed_id(rule->spec.class_name, step.statement_id(),
                               step.context);
        seed.rule = rule;
        seed.creation = program.location(step.statement_id());
        seed.creation_context = step.context;
        seed.value = *step.result;
        it = found.emplace(key, std::move(seed)).first;
      }
      it->second.paths.insert(path.id);
    }
  }

  std::vector<Seed> seeds;
  for (auto &[key, seed] : found)
    seeds.push_back(std::move(seed));
  return seeds;
}

TypestateResult run_typestate(const Seed &seed, const Program &program,
                              std::span<const ExecutionPath> paths) {
  const CompiledRule &rule = *seed.rule;
  const Fsm &fsm = rule.fsm;
  TypestateResult result;

  for (const auto &path : paths) {
    if (!seed.paths.contains(path.id))
      continue;

    Fsm::State state = fsm.start();
    std::optional<SourceLocation> last_event;

    for (const auto &step : path.steps) {
      auto call = seed_call(seed, step);
      if (!call)
        continue;
      auto candidates = rule.events_for(call->method, call->arity);
      if (candidates.empty())
        continue;

      const EventDef *event = candidates.front();
      for (const EventDef *ev : candidates) {
        if (fsm.step(state, ev->label)) {
          event = ev;
          break;
        }
      }

      EventFiring firing;
      firing.seed_id = seed.id;
      firing.path_id = path.id;
      firing.label = event->label;
      firing.location = program.location(step.statement_id());
      firing.result = step.result;
      for (std::size_t i = 0; i < event->params.size(); ++i) {
        const std::string &param = event->params[i];
        if (param == "_")
          continue;
        const ValueId &v = step.args[i];
        firing.bindings[param] = {v, extract_literals(path, v),
                                  static_type(path, v)};
      }

      auto next = fsm.step(state, event->label);
      firing.valid_transition = next.has_value();
      if (next) {
        state = *next;
      } else {
        ErrorReport err;
        err.kind = ErrorKind::Typestate;
        err.location = firing.location;
        err.rule_class = rule.spec.class_name;
        err.seed_id = seed.id;
        err.id = make_error_id(err.kind, err.location, seed.id, std::nullopt);
        err.message = "Unexpected call to " + call->method + " on " +
                      rule.spec.class_name + " object. Expected a call to " +
                      join_methods(rule, fsm.enabled(state)) + ".";
        add_unique(result.errors, std::move(err));
      }
      firing.resulting_state = state;
      last_event = firing.location;
      result.firings.push_back(std::move(firing));
    }

    if (!fsm.is_accepting(state)) {
      ErrorReport err;
      err.kind = ErrorKind::IncompleteOperation;
      err.location = last_event.value_or(seed.creation);
      err.rule_class = rule.spec.class_name;
      err.seed_id = seed.id;
      err.id = make_error_id(err.kind, err.location, seed.id, std::nullopt);
      err.message = "Operation on " + rule.spec.class_name +
                    " object not completed. Expected a call to " +
                    join_methods(rule, fsm.enabled(state)) + ".";
      add_unique(result.errors, std::move(err));
    }
  }
  return result;
}

std::vector<ErrorReport>
forbidden_method_check(const Seed &seed, const Program &program,
                       std::span<const ExecutionPath> paths) {
  const RuleSpec &spec = seed.rule->spec;
  std::vector<ErrorReport> errors;
  if (spec.forbidden.empty())
    return errors;
  for (const auto &path : paths) {
    if (!seed.paths.contains(path.id))
      continue;
    for (const auto &step : path.steps) {
      auto call = seed_call(seed, step);
      if (!call || !spec.is_forbidden(call->method,
                                      static_cast<int>(call->arity)))
        continue;
      ErrorReport err;
      err.kind = ErrorKind::ForbiddenMethod;
      err.location = program.location(step.statement_id());
      err.rule_class = spec.class_name;
      err.seed_id = seed.id;
      err.id = make_error_id(err.kind, err.location, seed.id, std::nullopt);
      err.message = "Detected call to forbidden method " + call->method + "/" +
                    std::to_string(call->arity) + " of class " +
                    spec.class_name + ".";
      add_unique(errors, std::move(err));
    }
  }
  return errors;
}

} // namespace errchain
