#include "byzstab/metric_io.hpp"

#include <cmath>
#include <fstream>

namespace byzstab {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    // accept only floats that are exactly a small rational (binary fractions like 0.75)
    double d = j.get<double>();
    for (std::int64_t q = 1; q <= 4096; q *= 2) {
      double p = d * static_cast<double>(q);
      if (p == std::floor(p) && std::abs(p) < 1e15)
        return Rational(static_cast<std::int64_t>(p), q);
    }
    throw input_error("float " + j.dump() + " is not an exact small rational; use \"p/q\"");
  }
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw input_error("cannot parse rational: " + j.dump());
    return *r;
  }
  throw input_error("expected number or \"p/q\" string, got " + j.dump());
}

namespace {

// Domain entry: number / "p/q" => that value; other string => symbolic token,
// valued by its list position.
void parse_domain(const json& arr, std::vector<Rational>& out, std::vector<std::string>& names) {
  if (!arr.is_array() || arr.empty()) throw input_error("domain must be a non-empty array");
  bool symbolic = false;
  for (const auto& e : arr)
    if (e.is_string() && !Rational::parse(e.get<std::string>())) symbolic = true;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (symbolic) {
      out.emplace_back(static_cast<std::int64_t>(i));
      names.push_back(arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump());
    } else {
      out.push_back(rational_from_json(arr[i]));
    }
  }
}

}  // namespace

RoutingMetric metric_from_json(const json& j) {
  if (!j.is_object()) throw input_error("metric file must be a JSON object");
  std::string kind = j.value("kind", "builtin");
  if (kind == "builtin") {
    MetricOptions opt;
    if (j.contains("window")) opt.value_window = j.at("window").get<int>();
    if (j.contains("weight_window")) opt.weight_window = j.at("weight_window").get<int>();
    if (j.contains("flow_mr")) opt.flow_mr = j.at("flow_mr").get<std::int64_t>();
    if (j.contains("grid_denominator")) opt.grid_denominator = j.at("grid_denominator").get<int>();
    if (!j.contains("name")) throw input_error("builtin metric needs a name");
    return RoutingMetric::builtin_by_name(j.at("name").get<std::string>(), opt);
  }
  if (kind != "table") throw input_error("metric kind must be \"builtin\" or \"table\"");

  for (const char* key : {"name", "values", "weights", "met", "mr", "order"})
    if (!j.contains(key)) throw input_error(std::string("table metric missing field: ") + key);

  std::vector<Rational> values, weights;
  std::vector<std::string> value_names, weight_names;
  parse_domain(j.at("values"), values, value_names);
  parse_domain(j.at("weights"), weights, weight_names);

  auto lookup = [](const json& e, const std::vector<Rational>& dom,
                   const std::vector<std::string>& names) -> Rational {
    if (e.is_string() && !names.empty()) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == e.get<std::string>()) return dom[i];
    }
    return rational_from_json(e);
  };

  const json& met = j.at("met");
  if (!met.is_array() || met.size() != values.size())
    throw input_error("met must be an array with one row per value");
  std::vector<std::vector<MetricValue>> table;
  for (const auto& row : met) {
    if (!row.is_array() || row.size() != weights.size())
      throw input_error("met row width must equal |weights|");
    std::vector<MetricValue> r;
    for (const auto& e : row) r.push_back(lookup(e, values, value_names));
    table.push_back(std::move(r));
  }

  Rational mr = lookup(j.at("mr"), values, value_names);
  std::string order = j.at("order").get<std::string>();
  if (order != "asc" && order != "desc") throw input_error("order must be \"asc\" or \"desc\"");

  return RoutingMetric::table(j.at("name").get<std::string>(), std::move(values),
                              std::move(weights), std::move(table), mr,
                              order == "asc" ? OrderDir::Asc : OrderDir::Desc,
                              std::move(value_names), std::move(weight_names));
}

RoutingMetric load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open metric file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error("metric file parse error: " + std::string(e.what()));
  }
  return metric_from_json(j);
}

nlohmann::json metric_properties_json(const RoutingMetric& metric) {
  const auto& p = metric.properties();
  json fixed = json::array();
  for (const auto& v : p.fixed_points) fixed.push_back(metric.display_value(v));
  return json{{"schema_version", 1},
              {"metric", metric.name()},
              {"bounded", p.bounded},
              {"monotonic", p.monotonic},
              {"maximizable", p.maximizable},
              {"strictly_decreasing", p.strictly_decreasing},
              {"fixed_points", fixed},
              {"strongly_maximizable", p.strongly_maximizable},
              {"domain_exhaustive", p.domain_exhaustive},
              {"utility_ok", metric.utility_ok()}};
}

}  // namespace byzstab
