#include "byzstab/system_io.hpp"

#include <filesystem>
#include <fstream>

#include "byzstab/metric_io.hpp"

namespace byzstab {

using nlohmann::json;

WeightedSystem system_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw input_error("graph file must be a JSON object");
  for (const char* key : {"metric", "nodes", "root", "edges"})
    if (!j.contains(key)) throw input_error(std::string("graph file missing field: ") + key);

  MetricPtr metric;
  const json& mj = j.at("metric");
  if (mj.is_object()) {
    metric = std::make_shared<RoutingMetric>(metric_from_json(mj));
  } else if (mj.is_string()) {
    std::string s = mj.get<std::string>();
    bool is_path = s.find(".json") != std::string::npos || s.find('/') != std::string::npos;
    if (is_path) {
      std::filesystem::path p(s);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      metric = std::make_shared<RoutingMetric>(load_metric_file(p.string()));
    } else {
      MetricOptions opt;
      if (j.contains("metric_options")) {
        const json& o = j.at("metric_options");
        if (o.contains("window")) opt.value_window = o.at("window").get<int>();
        if (o.contains("weight_window")) opt.weight_window = o.at("weight_window").get<int>();
        if (o.contains("flow_mr")) opt.flow_mr = o.at("flow_mr").get<std::int64_t>();
        if (o.contains("grid_denominator"))
          opt.grid_denominator = o.at("grid_denominator").get<int>();
      }
      metric = std::make_shared<RoutingMetric>(RoutingMetric::builtin_by_name(s, opt));
    }
  } else {
    throw input_error("metric must be a name, a path, or an inline object");
  }

  GraphSpec spec;
  spec.metric = metric;
  for (const auto& n : j.at("nodes")) spec.nodes.push_back(n.get<std::string>());
  spec.root = j.at("root").get<std::string>();
  if (j.contains("byzantine"))
    for (const auto& b : j.at("byzantine")) spec.byzantine.push_back(b.get<std::string>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw input_error("edge entries must be [node, node, weight]");
    EdgeWeight w;
    if (e[2].is_string()) {
      auto parsed = metric->weight_by_name(e[2].get<std::string>());
      if (!parsed) throw input_error("cannot parse edge weight " + e[2].dump());
      w = *parsed;
    } else {
      w = rational_from_json(e[2]);
    }
    spec.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>(), w);
  }
  return build_system(spec);
}

WeightedSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error("graph file parse error: " + std::string(e.what()));
  }
  return system_from_json(j, std::filesystem::path(path).parent_path().string());
}

json system_to_json(const WeightedSystem& system) {
  json nodes = json::array();
  for (const auto& n : system.names()) nodes.push_back(n);
  json byz = json::array();
  for (ProcessId b : system.byzantine()) byz.push_back(system.name_of(b));
  json edges = json::array();
  for (ProcessId v = 0; v < system.size(); ++v)
    for (const auto& nb : system.neighbors(v))
      if (nb.id > v)
        edges.push_back(json::array(
            {system.name_of(v), system.name_of(nb.id), system.metric().display_weight(nb.weight)}));
  return json{{"metric", system.metric().name()},
              {"nodes", nodes},
              {"root", system.name_of(system.root())},
              {"byzantine", byz},
              {"edges", edges}};
}

}  // namespace byzstab
