#pragma once

#include <string>

#include <json.hpp>

#include "byzstab/metric.hpp"

namespace byzstab {

/// Metric definition file:
///   {"name":..., "kind":"builtin"|"table", "values":[...], "weights":[...],
///    "met":[[row per value, col per weight]], "mr":..., "order":"asc"|"desc"}
/// Builtin kind takes optional "window", "weight_window", "flow_mr",
/// "grid_denominator". Domain entries are numbers, "p/q" strings, or symbolic
/// tokens (table metrics only).
RoutingMetric metric_from_json(const nlohmann::json& j);
RoutingMetric load_metric_file(const std::string& path);

nlohmann::json metric_properties_json(const RoutingMetric& metric);

/// Parses a scalar that may be an integer, an exactly-representable decimal, or "p/q".
Rational rational_from_json(const nlohmann::json& j);

}  // namespace byzstab
