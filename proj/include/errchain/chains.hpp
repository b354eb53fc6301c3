//===- chains.hpp - Error chains, roots and statistics ---------*- C++ -*-===//

#pragma once

#include "errchain/propagation.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace errchain {

enum class ErrorRole { Root, Subsequent, Isolated };

std::string_view to_string(ErrorRole role);

/// Links each REQUIRED_PREDICATE error to the causes of the hidden
/// instances it looked up (same predicate, same value, overlapping paths)
/// and fills the inverse `subsequent_ids`. A link from an error to itself is
/// dropped. Does nothing when `sed_enabled` is false.
void map_subsequent(std::vector<ErrorReport> &errors,
                    const PropagationResult &propagation, bool sed_enabled);

ErrorRole classify(const ErrorReport &error);
std::map<std::string, ErrorRole>
classify(const std::vector<ErrorReport> &errors);

using ChainEdge = std::pair<std::string, std::string>;

struct ChainComponent {
  std::vector<std::string> node_ids;
  std::vector<ChainEdge> edges;
  bool cyclic = false;
};

/// The precedes relation over all errors: an edge (a, b) for every
/// `a` in `b.preceding_ids`.
class ChainGraph {
public:
  ChainGraph() = default;
  explicit ChainGraph(const std::vector<ErrorReport> &errors);

  const std::set<std::string> &nodes() const { return nodes_; }
  const std::set<ChainEdge> &edges() const { return edges_; }
  /// Weakly connected components ordered by their smallest node id.
  const std::vector<ChainComponent> &components() const { return components_; }

  const std::set<std::string> &successors(const std::string &id) const;
  const std::set<std::string> &predecessors(const std::string &id) const;
  bool contains(const std::string &id) const { return nodes_.contains(id); }

private:
  std::set<std::string> nodes_;
  std::set<ChainEdge> edges_;
  std::map<std::string, std::set<std::string>> succ_;
  std::map<std::string, std::set<std::string>> pred_;
  std::vector<ChainComponent> components_;
};

struct DependentTree {
  std::set<std::string> node_ids;
  std::set<ChainEdge> edges;
  /// Node count of the longest simple directed path.
  std::size_t depth = 0;
  bool cyclic = false;
};

/// Ancestor closure plus descendant closure of `id` with induced edges.
/// Throws std::out_of_range for an unknown id.
DependentTree dependent_error_tree(const std::string &id,
                                   const ChainGraph &graph);

/// Node count of the longest simple directed path within `nodes`.
std::size_t longest_path(const std::set<std::string> &nodes,
                         const std::set<ChainEdge> &edges);

ChainStatistics compute_stats(const std::vector<ErrorReport> &errors,
                              const ChainGraph &graph);

} // namespace errchain
