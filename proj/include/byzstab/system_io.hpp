#pragma once

#include <string>

#include <json.hpp>

#include "byzstab/system.hpp"

namespace byzstab {

/// Graph input file:
///   {"metric": <builtin name | path | inline object>,
///    "nodes": ["r","p1",...], "root": "r", "byzantine": ["b"],
///    "edges": [["r","p1", w], ...]}
/// Weights are numbers, "p/q" strings, or symbolic weight tokens of the metric.
WeightedSystem system_from_json(const nlohmann::json& j, const std::string& base_dir = "");
WeightedSystem load_system_file(const std::string& path);

nlohmann::json system_to_json(const WeightedSystem& system);

}  // namespace byzstab
