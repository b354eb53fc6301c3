//===- report.hpp - Text and JSON rendering --------------------*- C++ -*-===//

#pragma once

#include "errchain/pipeline.hpp"

#include <json.hpp>
#include <string>

namespace errchain {

/// Grouped mode prints every root error with its transitive subsequent
/// errors indented beneath it, then chains without a root, then isolated
/// errors. Ungrouped mode lists errors in location order.
std::string render_text(const ReportDocument &report, bool group_chains);

nlohmann::ordered_json to_json(const ReportDocument &report);

/// Pretty-printed `to_json` with a trailing newline.
std::string render_json(const ReportDocument &report);

} // namespace errchain
