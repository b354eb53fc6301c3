//===- paths.cpp - Path enumeration by inlining ---------------------------===//

#include "errchain/paths.hpp"

#include "errchain/errors.hpp"

#include <limits>

namespace errchain {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a)
    return kSaturated;
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

class PathCounter {
public:
  explicit PathCounter(const Program &p) : program_(p) {}

  std::size_t block(const Block &b) {
    std::size_t n = 1;
    for (const auto &stmt : b) {
      if (const auto *br = stmt.as<BranchStmt>())
        n = sat_mul(n, sat_add(block(br->then_block), block(br->else_block)));
      else if (const auto *call = stmt.as<UserCallStmt>())
        n = sat_mul(n, function(call->function));
    }
    return n;
  }

private:
  std::size_t function(const std::string &name) {
    if (auto it = memo_.find(name); it != memo_.end())
      return it->second;
    std::size_t n = block(program_.functions.at(name).body);
    memo_[name] = n;
    return n;
  }

  const Program &program_;
  std::map<std::string, std::size_t> memo_;
};

struct Frame {
  std::map<std::string, ValueId> env;
  std::vector<int> context;
  std::optional<ValueId> returned;
};

struct PartialPath {
  ExecutionPath path;
  Frame frame;
};

class PathEnumerator {
public:
  explicit PathEnumerator(const Program &p) : program_(p) {}

  std::vector<PartialPath> run_block(const Block &block,
                                     std::vector<PartialPath> states) {
    for (const auto &stmt : block) {
      std::vector<PartialPath> next;
      for (auto &state : states)
        run_statement(stmt, std::move(state), next);
      states = std::move(next);
    }
    return states;
  }

private:
  ValueId lookup(const PartialPath &state, const std::string &var,
                 const Statement &stmt) const {
    auto it = state.frame.env.find(var);
    if (it == state.frame.env.end())
      throw ProgramError(program_.file + ":" + std::to_string(stmt.line) +
                         ": variable '" + var +
                         "' is not bound on every path");
    return it->second;
  }

  ValueId mint(PartialPath &state, const Statement &stmt, int slot,
               ValueOrigin origin) const {
    ValueId v{stmt.id, slot, state.frame.context};
    state.path.origins[v] = std::move(origin);
    return v;
  }

  std::vector<ValueId> resolve_args(PartialPath &state, const Statement &stmt,
                                    const std::vector<Arg> &args) const {
    std::vector<ValueId> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (const auto *var = std::get_if<std::string>(&args[i])) {
        out.push_back(lookup(state, *var, stmt));
      } else {
        const Literal &lit = std::get<Literal>(args[i]);
        ValueOrigin origin{ValueOrigin::Kind::Literal, lit,
                           {std::string(lit.type_name())}};
        out.push_back(mint(state, stmt, static_cast<int>(i), std::move(origin)));
      }
    }
    return out;
  }

  static void bind(PartialPath &state, const std::string &var,
                   const ValueId &v) {
    if (!var.empty())
      state.frame.env[var] = v;
  }

  void run_statement(const Statement &stmt, PartialPath state,
                     std::vector<PartialPath> &out) {
    PathStep step;
    step.stmt = &stmt;
    step.context = state.frame.context;

    if (const auto *s = stmt.as<AssignStmt>()) {
      ValueOrigin origin{ValueOrigin::Kind::Literal, s->value,
                         {std::string(s->value.type_name())}};
      step.result = mint(state, stmt, -1, std::move(origin));
      bind(state, s->target, *step.result);
    } else if (const auto *s = stmt.as<CopyStmt>()) {
      step.result = lookup(state, s->source, stmt);
      bind(state, s->target, *step.result);
    } else if (const auto *s = stmt.as<NewStmt>()) {
      step.args = resolve_args(state, stmt, s->args);
      step.result = mint(state, stmt, -1,
                         {ValueOrigin::Kind::Allocation, {}, {s->type_name}});
      bind(state, s->target, *step.result);
    } else if (const auto *s = stmt.as<StaticCallStmt>()) {
      step.args = resolve_args(state, stmt, s->args);
      step.result = mint(state, stmt, -1,
                         {ValueOrigin::Kind::CallResult, {}, {s->type_name}});
      bind(state, s->target, *step.result);
    } else if (const auto *s = stmt.as<InstanceCallStmt>()) {
      step.receiver = lookup(state, s->receiver, stmt);
      step.args = resolve_args(state, stmt, s->args);
      step.result =
          mint(state, stmt, -1, {ValueOrigin::Kind::CallResult, {}, {}});
      bind(state, s->target, *step.result);
    } else if (const auto *s = stmt.as<ReturnStmt>()) {
      step.result = lookup(state, s->source, stmt);
      state.frame.returned = step.result;
    } else if (const auto *s = stmt.as<UserCallStmt>()) {
      run_call(stmt, *s, std::move(step), std::move(state), out);
      return;
    } else if (const auto *s = stmt.as<BranchStmt>()) {
      state.path.steps.push_back(std::move(step));
      auto then_paths = run_block(s->then_block, {state});
      auto else_paths = run_block(s->else_block, {std::move(state)});
      for (auto &p : then_paths)
        out.push_back(std::move(p));
      for (auto &p : else_paths)
        out.push_back(std::move(p));
      return;
    }
    state.path.steps.push_back(std::move(step));
    out.push_back(std::move(state));
  }

  void run_call(const Statement &stmt, const UserCallStmt &call, PathStep step,
                PartialPath state, std::vector<PartialPath> &out) {
    const FunctionDef &callee = program_.functions.at(call.function);
    step.args = resolve_args(state, stmt, call.args);

    Frame caller = state.frame;
    Frame inner;
    inner.context = caller.context;
    inner.context.push_back(stmt.id);
    for (std::size_t i = 0; i < callee.params.size(); ++i)
      inner.env[callee.params[i]] = step.args[i];

    std::size_t call_index = state.path.steps.size();
    state.path.steps.push_back(std::move(step));
    state.frame = std::move(inner);

    for (auto &done : run_block(callee.body, {std::move(state)})) {
      std::optional<ValueId> returned = done.frame.returned;
      done.frame = caller;
      if (returned) {
        done.path.steps[call_index].result = returned;
        bind(done, call.target, *returned);
      }
      out.push_back(std::move(done));
    }
  }

  const Program &program_;
};

} // namespace

std::size_t count_paths(const Program &program) {
  return PathCounter(program).block(program.entry().body);
}

std::vector<ExecutionPath> enumerate_paths(const Program &program,
                                           std::size_t max_paths) {
  std::size_t count = count_paths(program);
  if (count > max_paths)
    throw PathBudgetExceeded(max_paths, count, count == kSaturated);

  PartialPath start;
  const FunctionDef &main = program.entry();
  for (std::size_t i = 0; i < main.params.size(); ++i) {
    ValueId v{0, static_cast<int>(i), {}};
    start.frame.env[main.params[i]] = v;
    start.path.origins[v] = {ValueOrigin::Kind::EntryParameter, {}, {}};
  }

  PathEnumerator walker(program);
  std::vector<ExecutionPath> paths;
  for (auto &p : walker.run_block(main.body, {std::move(start)})) {
    p.path.id = static_cast<int>(paths.size());
    paths.push_back(std::move(p.path));
  }
  return paths;
}

LiteralSet extract_literals(const ExecutionPath &path, const ValueId &value) {
  auto it = path.origins.find(value);
  if (it == path.origins.end() || !it->second.literal)
    return std::nullopt;
  return std::set<Literal>{*it->second.literal};
}

std::set<std::string> static_type(const ExecutionPath &path,
                                  const ValueId &value) {
  auto it = path.origins.find(value);
  if (it == path.origins.end())
    return {};
  return it->second.types;
}

} // namespace errchain
