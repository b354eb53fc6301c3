//===- chains.cpp ---------------------------------------------------------===//

#include "errchain/chains.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace errchain {

namespace {

const std::set<std::string> kNoNodes;

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency successors_within(const std::set<std::string> &nodes,
                            const std::set<ChainEdge> &edges) {
  Adjacency adj;
  for (const auto &[from, to] : edges)
    if (nodes.contains(from) && nodes.contains(to))
      adj[from].push_back(to);
  return adj;
}

bool has_cycle(const std::set<std::string> &nodes, const Adjacency &adj) {
  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::function<bool(const std::string &)> visit = [&](const std::string &n) {
    color[n] = Color::Grey;
    if (auto it = adj.find(n); it != adj.end()) {
      for (const auto &m : it->second) {
        Color c = color[m];
        if (c == Color::Grey || (c == Color::White && visit(m)))
          return true;
      }
    }
    color[n] = Color::Black;
    return false;
  };
  for (const auto &n : nodes)
    if (color[n] == Color::White && visit(n))
      return true;
  return false;
}

template <typename Next>
std::set<std::string> closure(const std::string &start, Next next) {
  std::set<std::string> seen{start};
  std::deque<std::string> work{start};
  while (!work.empty()) {
    std::string n = std::move(work.front());
    work.pop_front();
    for (const auto &m : next(n))
      if (seen.insert(m).second)
        work.push_back(m);
  }
  return seen;
}

} // namespace

std::string_view to_string(ErrorRole role) {
  switch (role) {
  case ErrorRole::Root:
    return "ROOT";
  case ErrorRole::Subsequent:
    return "SUBSEQUENT";
  case ErrorRole::Isolated:
    return "ISOLATED";
  }
  return "ISOLATED";
}

void map_subsequent(std::vector<ErrorReport> &errors,
                    const PropagationResult &propagation, bool sed_enabled) {
  if (!sed_enabled)
    return;
  std::map<std::string, ErrorReport *> by_id;
  for (auto &e : errors)
    by_id[e.id] = &e;

  for (const auto &u : propagation.unsatisfied) {
    auto self = by_id.find(u.error_id);
    if (self == by_id.end())
      continue;
    auto env_it = propagation.env.find(u.requirement.value);
    if (env_it == propagation.env.end())
      continue;
    for (const auto &inst : env_it->second) {
      if (inst.status != PredicateStatus::Hidden ||
          inst.name != u.requirement.predicate)
        continue;
      bool overlap = std::any_of(
          inst.paths.begin(), inst.paths.end(),
          [&](int p) { return u.requirement.paths.contains(p); });
      if (!overlap)
        continue;
      for (const auto &cause : inst.cause_error_ids) {
        if (cause == u.error_id)
          continue;
        auto c = by_id.find(cause);
        if (c == by_id.end())
          continue;
        self->second->preceding_ids.insert(cause);
        c->second->subsequent_ids.insert(u.error_id);
      }
    }
  }
}

ErrorRole classify(const ErrorReport &error) {
  if (!error.preceding_ids.empty())
    return ErrorRole::Subsequent;
  if (!error.subsequent_ids.empty())
    return ErrorRole::Root;
  return ErrorRole::Isolated;
}

std::map<std::string, ErrorRole>
classify(const std::vector<ErrorReport> &errors) {
  std::map<std::string, ErrorRole> out;
  for (const auto &e : errors)
    out[e.id] = classify(e);
  return out;
}

ChainGraph::ChainGraph(const std::vector<ErrorReport> &errors) {
  for (const auto &e : errors)
    nodes_.insert(e.id);
  for (const auto &e : errors) {
    for (const auto &p : e.preceding_ids) {
      if (!nodes_.contains(p))
        continue;
      edges_.insert({p, e.id});
      succ_[p].insert(e.id);
      pred_[e.id].insert(p);
    }
  }

  std::set<std::string> assigned;
  for (const auto &n : nodes_) {
    if (assigned.contains(n))
      continue;
    auto members = closure(n, [&](const std::string &x) {
      std::set<std::string> both = successors(x);
      const auto &p = predecessors(x);
      both.insert(p.begin(), p.end());
      return both;
    });
    ChainComponent comp;
    comp.node_ids.assign(members.begin(), members.end());
    std::set<ChainEdge> comp_edges;
    for (const auto &m : members)
      for (const auto &s : successors(m))
        comp_edges.insert({m, s});
    comp.edges.assign(comp_edges.begin(), comp_edges.end());
    comp.cyclic = has_cycle(members, successors_within(members, comp_edges));
    assigned.insert(members.begin(), members.end());
    components_.push_back(std::move(comp));
  }
}

const std::set<std::string> &
ChainGraph::successors(const std::string &id) const {
  auto it = succ_.find(id);
  return it == succ_.end() ? kNoNodes : it->second;
}

const std::set<std::string> &
ChainGraph::predecessors(const std::string &id) const {
  auto it = pred_.find(id);
  return it == pred_.end() ? kNoNodes : it->second;
}

std::size_t longest_path(const std::set<std::string> &nodes,
                         const std::set<ChainEdge> &edges) {
  if (nodes.empty())
    return 0;
  Adjacency adj = successors_within(nodes, edges);

  if (!has_cycle(nodes, adj)) {
    std::map<std::string, std::size_t> memo;
    std::function<std::size_t(const std::string &)> depth =
        [&](const std::string &n) -> std::size_t {
      if (auto it = memo.find(n); it != memo.end())
        return it->second;
      std::size_t best = 0;
      if (auto it = adj.find(n); it != adj.end())
        for (const auto &m : it->second)
          best = std::max(best, depth(m));
      return memo[n] = best + 1;
    };
    std::size_t best = 0;
    for (const auto &n : nodes)
      best = std::max(best, depth(n));
    return best;
  }

  // Cyclic: exhaustive search over simple paths.
  std::set<std::string> on_path;
  std::function<std::size_t(const std::string &)> walk =
      [&](const std::string &n) -> std::size_t {
    on_path.insert(n);
    std::size_t best = 0;
    if (auto it = adj.find(n); it != adj.end())
      for (const auto &m : it->second)
        if (!on_path.contains(m))
          best = std::max(best, walk(m));
    on_path.erase(n);
    return best + 1;
  };
  std::size_t best = 0;
  for (const auto &n : nodes)
    best = std::max(best, walk(n));
  return best;
}

DependentTree dependent_error_tree(const std::string &id,
                                   const ChainGraph &graph) {
  if (!graph.contains(id))
    throw std::out_of_range("unknown error id: " + id);
  auto ancestors = closure(id, [&](const std::string &x)
                                   -> const std::set<std::string> & {
    return graph.predecessors(x);
  });
  auto descendants = closure(id, [&](const std::string &x)
                                     -> const std::set<std::string> & {
    return graph.successors(x);
  });

  DependentTree tree;
  tree.node_ids = std::move(ancestors);
  tree.node_ids.insert(descendants.begin(), descendants.end());
  for (const auto &e : graph.edges())
    if (tree.node_ids.contains(e.first) && tree.node_ids.contains(e.second))
      tree.edges.insert(e);
  tree.cyclic =
      has_cycle(tree.node_ids, successors_within(tree.node_ids, tree.edges));
  tree.depth = longest_path(tree.node_ids, tree.edges);
  return tree;
}

ChainStatistics compute_stats(const std::vector<ErrorReport> &errors,
                              const ChainGraph &graph) {
  ChainStatistics stats;
  stats.total_errors = errors.size();
  for (ErrorKind k : kAllErrorKinds) {
    stats.per_kind_counts[k] = 0;
    stats.per_kind_root_counts[k] = 0;
  }

  std::map<std::string, const ErrorReport *> by_id;
  std::size_t roots = 0, direct_subsequent = 0, preceding = 0;
  for (const auto &e : errors) {
    by_id[e.id] = &e;
    ++stats.per_kind_counts[e.kind];
    switch (classify(e)) {
    case ErrorRole::Root:
      ++roots;
      ++stats.per_kind_root_counts[e.kind];
      direct_subsequent += e.subsequent_ids.size();
      break;
    case ErrorRole::Subsequent:
      ++stats.subsequent_count;
      preceding += e.preceding_ids.size();
      break;
    case ErrorRole::Isolated:
      break;
    }
  }
  if (roots)
    stats.avg_direct_subsequent_per_root =
        static_cast<double>(direct_subsequent) / static_cast<double>(roots);
  if (stats.subsequent_count)
    stats.avg_preceding_per_subsequent =
        static_cast<double>(preceding) /
        static_cast<double>(stats.subsequent_count);

  for (const auto &comp : graph.components()) {
    if (comp.edges.empty())
      continue;
    stats.tree_sizes.push_back(comp.node_ids.size());
    std::set<std::string> nodes(comp.node_ids.begin(), comp.node_ids.end());
    std::set<ChainEdge> edges(comp.edges.begin(), comp.edges.end());
    if (longest_path(nodes, edges) >= 3)
      ++stats.trees_depth_ge_3;
  }

  for (const auto &[from, to] : graph.edges()) {
    auto a = by_id.find(from), b = by_id.find(to);
    if (a == by_id.end() || b == by_id.end())
      continue;
    ++stats.class_dependency_edges[{a->second->rule_class,
                                    b->second->rule_class}];
  }
  return stats;
}

} // namespace errchain
