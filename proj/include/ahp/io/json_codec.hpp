#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "ahp/core/consistency.hpp"
#include "ahp/io/project.hpp"
#include "ahp/model/evaluation.hpp"

namespace ahp::io {

// Shared by the CLI (--json) and the HTTP service so both render the same
// doubles with the same round-trip precision.
nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const CompositeWeightTable& table);
nlohmann::json to_json(const EvaluationResult& result);
nlohmann::json to_json(const std::vector<Hotspot>& hotspots);
nlohmann::json to_json(const NodeSpec& node);
/// Project as JSON with full double precision (serialize_project rounds).
nlohmann::json to_json(const ProjectDocument& project);

/// `{"ri": {"3": 0.58, ...}}` or `{"ri": [0, 0, 0.58, ...]}` (orders from 1).
RiTable parse_ri_table(std::string_view text);

}  // namespace ahp::io
