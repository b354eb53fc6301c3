//===- report.cpp ---------------------------------------------------------===//

#include "errchain/report.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace errchain {

namespace {

using nlohmann::ordered_json;

std::string headline(const ErrorReport &e) {
  std::string line = std::string(display_name(e.kind)) + " at " +
                     e.location.file + ":" + std::to_string(e.location.line);
  line += " [" + e.id + "]";
  return line;
}

void write_error(std::ostream &os, const ErrorReport &e, int indent,
                 std::string_view suffix = {}) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  os << pad << headline(e);
  if (!suffix.empty())
    os << " (" << suffix << ")";
  os << "\n" << pad << "  " << e.message << "\n";
}

class GroupedWriter {
public:
  GroupedWriter(const ReportDocument &doc, std::ostream &os)
      : doc_(doc), os_(os) {
    for (std::size_t i = 0; i < doc.errors.size(); ++i)
      rank_[doc.errors[i].id] = i;
    for (const auto &e : doc.errors)
      if (doc.roles.at(e.id) == ErrorRole::Root)
        for (const auto &d : descendants(e.id))
          ++root_count_[d];
  }

  void run() {
    std::set<std::string> printed;
    std::size_t roots = 0;
    for (const auto &e : doc_.errors) {
      if (doc_.roles.at(e.id) != ErrorRole::Root)
        continue;
      if (roots++ == 0)
        os_ << "Root errors and their subsequent errors:\n\n";
      std::set<std::string> shown;
      tree(e.id, 0, shown);
      printed.insert(shown.begin(), shown.end());
      os_ << "\n";
    }

    // Components made only of subsequent errors (cycles without a root).
    bool header = false;
    for (const auto &e : doc_.errors) {
      if (printed.contains(e.id) ||
          doc_.roles.at(e.id) != ErrorRole::Subsequent)
        continue;
      if (!header) {
        os_ << "Chains without a root error:\n\n";
        header = true;
      }
      std::set<std::string> shown;
      tree(e.id, 0, shown);
      printed.insert(shown.begin(), shown.end());
      os_ << "\n";
    }

    header = false;
    for (const auto &e : doc_.errors) {
      if (doc_.roles.at(e.id) != ErrorRole::Isolated)
        continue;
      if (!header) {
        os_ << "Isolated errors:\n\n";
        header = true;
      }
      write_error(os_, e, 0);
    }
  }

private:
  std::set<std::string> descendants(const std::string &id) const {
    std::set<std::string> seen;
    std::vector<std::string> work{id};
    while (!work.empty()) {
      std::string n = work.back();
      work.pop_back();
      for (const auto &s : doc_.graph.successors(n))
        if (seen.insert(s).second)
          work.push_back(s);
    }
    return seen;
  }

  std::vector<std::string> ordered_children(const std::string &id) const {
    const auto &succ = doc_.graph.successors(id);
    std::vector<std::string> out(succ.begin(), succ.end());
    std::sort(out.begin(), out.end(), [&](const auto &a, const auto &b) {
      return rank_.at(a) < rank_.at(b);
    });
    return out;
  }

  void tree(const std::string &id, int depth, std::set<std::string> &shown) {
    const ErrorReport &e = *doc_.find(id);
    if (!shown.insert(id).second) {
      std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
      os_ << pad << headline(e) << " (shown above)\n";
      return;
    }
    std::string suffix;
    if (auto it = root_count_.find(id); it != root_count_.end() &&
                                        it->second > 1)
      suffix = "also caused by " + std::to_string(it->second - 1) +
               " other root(s)";
    write_error(os_, e, depth, suffix);
    for (const auto &child : ordered_children(id))
      tree(child, depth + 1, shown);
  }

  const ReportDocument &doc_;
  std::ostream &os_;
  std::map<std::string, std::size_t> rank_;
  std::map<std::string, std::size_t> root_count_;
};

ordered_json kind_counts(const std::map<ErrorKind, std::size_t> &counts) {
  ordered_json out = ordered_json::object();
  for (ErrorKind k : kAllErrorKinds) {
    auto it = counts.find(k);
    out[std::string(to_tag(k))] = it == counts.end() ? 0 : it->second;
  }
  return out;
}

} // namespace

std::string render_text(const ReportDocument &report, bool group_chains) {
  std::ostringstream os;
  if (report.errors.empty()) {
    os << "No violations found.\n";
    return os.str();
  }

  std::size_t roots = 0, subsequent = 0, isolated = 0;
  for (const auto &[id, role] : report.roles) {
    roots += role == ErrorRole::Root;
    subsequent += role == ErrorRole::Subsequent;
    isolated += role == ErrorRole::Isolated;
  }
  os << report.errors.size() << " error(s)";
  if (report.config.sed_enabled)
    os << ": " << roots << " root, " << subsequent << " subsequent, "
       << isolated << " isolated";
  os << "\n\n";

  if (group_chains && !report.config.sed_enabled)
    os << "Note: grouping needs subsequent error detection (--sed on); "
          "listing errors by location.\n\n";

  if (group_chains && report.config.sed_enabled) {
    GroupedWriter(report, os).run();
    return os.str();
  }
  for (const auto &e : report.errors)
    write_error(os, e, 0);
  return os.str();
}

nlohmann::ordered_json to_json(const ReportDocument &report) {
  ordered_json doc;
  doc["version"] = report.version;
  doc["config"] = {{"sed", report.config.sed_enabled},
                   {"bet", report.config.bet_enabled}};

  ordered_json errors = ordered_json::array();
  for (const auto &e : report.errors) {
    ordered_json j;
    j["id"] = e.id;
    j["kind"] = std::string(to_tag(e.kind));
    j["rule_class"] = e.rule_class;
    j["seed_id"] = e.seed_id;
    j["location"] = {{"file", e.location.file},
                     {"line", e.location.line},
                     {"statement_id", e.location.statement_id}};
    j["message"] = e.message;
    if (e.predicate_name)
      j["predicate"] = *e.predicate_name;
    j["preceding_ids"] = e.preceding_ids;
    j["subsequent_ids"] = e.subsequent_ids;
    j["role"] = std::string(to_string(report.roles.at(e.id)));
    errors.push_back(std::move(j));
  }
  doc["errors"] = std::move(errors);

  ordered_json components = ordered_json::array();
  for (const auto &c : report.graph.components()) {
    ordered_json edges = ordered_json::array();
    for (const auto &[from, to] : c.edges)
      edges.push_back(ordered_json::array({from, to}));
    components.push_back({{"node_ids", c.node_ids},
                          {"edges", std::move(edges)},
                          {"cyclic", c.cyclic}});
  }
  doc["components"] = std::move(components);

  const ChainStatistics &s = report.stats;
  ordered_json class_edges = ordered_json::array();
  for (const auto &[edge, count] : s.class_dependency_edges)
    class_edges.push_back({{"from", edge.from},
                           {"to", edge.to},
                           {"count", count},
                           {"self_loop", edge.self_loop()}});
  doc["stats"] = {
      {"total_errors", s.total_errors},
      {"per_kind_counts", kind_counts(s.per_kind_counts)},
      {"per_kind_root_counts", kind_counts(s.per_kind_root_counts)},
      {"subsequent_count", s.subsequent_count},
      {"avg_direct_subsequent_per_root", s.avg_direct_subsequent_per_root},
      {"avg_preceding_per_subsequent", s.avg_preceding_per_subsequent},
      {"tree_sizes", s.tree_sizes},
      {"trees_depth_ge_3", s.trees_depth_ge_3},
      {"class_dependency_edges", std::move(class_edges)}};

  if (report.timings) {
    ordered_json t = ordered_json::object();
    for (const auto &[name, ms] : timing_fields(*report.timings))
      t[name] = ms;
    doc["timings"] = std::move(t);
  }
  return doc;
}

std::string render_json(const ReportDocument &report) {
  return to_json(report).dump(2) + "\n";
}

} // namespace errchain
