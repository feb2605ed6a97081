#include "byzstab/metric.hpp"

#include <algorithm>
#include <set>

namespace byzstab {

namespace {

std::vector<MetricValue> int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<MetricValue> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) out.emplace_back(i);
  return out;
}

// All p/q in [0,1] with q <= max_den, in increasing order.
std::vector<MetricValue> rational_grid(int max_den) {
  std::set<Rational> grid;
  for (int q = 1; q <= max_den; ++q)
    for (int p = 0; p <= q; ++p) grid.insert(Rational(p, q));
  return {grid.begin(), grid.end()};
}

}  // namespace

RoutingMetric RoutingMetric::builtin(BuiltinMetric kind, const MetricOptions& opt) {
  RoutingMetric m;
  m.builtin_kind_ = kind;
  switch (kind) {
    case BuiltinMetric::SP:
      m.name_ = "SP";
      m.values_ = int_range(0, opt.value_window);
      m.weights_ = int_range(0, opt.weight_window);
      m.values_exhaustive_ = false;
      m.weights_exhaustive_ = false;
      m.mr_ = Rational(0);
      m.order_ = OrderDir::Desc;
      break;
    case BuiltinMetric::BFS:
      m.name_ = "BFS";
      m.values_ = int_range(0, opt.value_window);
      m.weights_ = {Rational(1)};
      m.values_exhaustive_ = false;
      m.weights_exhaustive_ = true;
      m.mr_ = Rational(0);
      m.order_ = OrderDir::Desc;
      break;
    case BuiltinMetric::F:
      if (opt.flow_mr < 0) throw input_error("flow metric needs mr >= 0");
      m.name_ = "F";
      m.flow_mr_ = opt.flow_mr;
      m.values_ = int_range(0, opt.flow_mr);
      m.weights_ = int_range(0, opt.flow_mr);
      m.mr_ = Rational(opt.flow_mr);
      m.order_ = OrderDir::Asc;
      break;
    case BuiltinMetric::R:
      m.name_ = "R";
      m.values_ = rational_grid(opt.grid_denominator);
      m.weights_ = m.values_;
      m.values_exhaustive_ = false;  // the interval [0,1] is sampled, not enumerated
      m.weights_exhaustive_ = false;
      m.mr_ = Rational(1);
      m.order_ = OrderDir::Asc;
      break;
    case BuiltinMetric::NC:
      m.name_ = "NC";
      m.values_ = {Rational(0)};
      m.weights_ = {Rational(0)};
      m.mr_ = Rational(0);
      m.order_ = OrderDir::Asc;
      break;
    case BuiltinMetric::MET:
      m.name_ = "MET";
      m.values_ = int_range(0, 3);
      m.weights_ = {Rational(1)};
      m.mr_ = Rational(3);
      m.order_ = OrderDir::Asc;
      break;
  }
  m.finalize();
  return m;
}

RoutingMetric RoutingMetric::builtin_by_name(const std::string& name, const MetricOptions& opt) {
  if (name == "SP") return builtin(BuiltinMetric::SP, opt);
  if (name == "F") return builtin(BuiltinMetric::F, opt);
  if (name == "R") return builtin(BuiltinMetric::R, opt);
  if (name == "NC") return builtin(BuiltinMetric::NC, opt);
  if (name == "BFS") return builtin(BuiltinMetric::BFS, opt);
  if (name == "MET") return builtin(BuiltinMetric::MET, opt);
  throw input_error("unknown builtin metric: " + name);
}

RoutingMetric RoutingMetric::table(std::string name, std::vector<MetricValue> values,
                                   std::vector<EdgeWeight> weights,
                                   std::vector<std::vector<MetricValue>> met_table, MetricValue mr,
                                   OrderDir order, std::vector<std::string> value_names,
                                   std::vector<std::string> weight_names) {
  if (values.empty() || weights.empty()) throw input_error("table metric with empty domain");
  if (met_table.size() != values.size())
    throw input_error("met table must have one row per value");
  for (const auto& row : met_table)
    if (row.size() != weights.size()) throw input_error("met table row width != |W|");

  RoutingMetric m;
  m.name_ = std::move(name);
  m.values_ = std::move(values);
  m.weights_ = std::move(weights);
  m.mr_ = mr;
  m.order_ = order;
  m.value_names_ = std::move(value_names);
  m.weight_names_ = std::move(weight_names);

  auto tbl = std::make_shared<std::map<std::pair<Rational, Rational>, MetricValue>>();
  for (std::size_t i = 0; i < m.values_.size(); ++i) {
    for (std::size_t j = 0; j < m.weights_.size(); ++j) {
      const MetricValue& out = met_table[i][j];
      if (std::find(m.values_.begin(), m.values_.end(), out) == m.values_.end())
        throw input_error("met(" + m.values_[i].str() + "," + m.weights_[j].str() +
                          ") leaves the value set");
      (*tbl)[{m.values_[i], m.weights_[j]}] = out;
    }
  }
  m.met_table_ = tbl;
  m.finalize();
  return m;
}

MetricValue RoutingMetric::met(const MetricValue& m, const EdgeWeight& w) const {
  if (met_table_) {
    auto it = met_table_->find({m, w});
    if (it == met_table_->end())
      throw input_error("met(" + m.str() + "," + w.str() + ") outside table domain");
    return it->second;
  }
  switch (*builtin_kind_) {
    case BuiltinMetric::SP:
    case BuiltinMetric::BFS:
      return m + w;
    case BuiltinMetric::F:
      return m < w ? m : w;
    case BuiltinMetric::R:
      return m * w;
    case BuiltinMetric::NC:
      return Rational(0);
    case BuiltinMetric::MET: {
      Rational d = m - w;
      return d < Rational(0) ? Rational(0) : d;
    }
  }
  throw input_error("metric without met function");
}

bool RoutingMetric::value_in_domain(const MetricValue& m) const {
  if (met_table_ || values_exhaustive_)
    return std::find(values_.begin(), values_.end(), m) != values_.end();
  switch (*builtin_kind_) {
    case BuiltinMetric::SP:
    case BuiltinMetric::BFS:
      return m.is_integer() && m >= Rational(0);
    case BuiltinMetric::R:
      return m >= Rational(0) && m <= Rational(1);
    default:
      return std::find(values_.begin(), values_.end(), m) != values_.end();
  }
}

bool RoutingMetric::weight_in_domain(const EdgeWeight& w) const {
  if (met_table_ || weights_exhaustive_)
    return std::find(weights_.begin(), weights_.end(), w) != weights_.end();
  switch (*builtin_kind_) {
    case BuiltinMetric::SP:
      return w.is_integer() && w >= Rational(0);
    case BuiltinMetric::R:
      return w >= Rational(0) && w <= Rational(1);
    default:
      return std::find(weights_.begin(), weights_.end(), w) != weights_.end();
  }
}

std::string RoutingMetric::display_value(const MetricValue& m) const {
  if (!value_names_.empty())
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] == m && i < value_names_.size() && !value_names_[i].empty())
        return value_names_[i];
  return m.str();
}

std::string RoutingMetric::display_weight(const EdgeWeight& w) const {
  if (!weight_names_.empty())
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (weights_[i] == w && i < weight_names_.size() && !weight_names_[i].empty())
        return weight_names_[i];
  return w.str();
}

std::optional<MetricValue> RoutingMetric::value_by_name(const std::string& s) const {
  for (std::size_t i = 0; i < value_names_.size(); ++i)
    if (value_names_[i] == s) return values_[i];
  return Rational::parse(s);
}

std::optional<EdgeWeight> RoutingMetric::weight_by_name(const std::string& s) const {
  for (std::size_t i = 0; i < weight_names_.size(); ++i)
    if (weight_names_[i] == s) return weights_[i];
  return Rational::parse(s);
}

void RoutingMetric::finalize() {
  for (const auto& v : values_)
    if (less(mr_, v))
      throw input_error("mr=" + mr_.str() + " is not the order maximum (found " + v.str() + ")");
  if (std::find(values_.begin(), values_.end(), mr_) == values_.end())
    throw input_error("mr not in the value set");
  props_ = check_properties(*this);
  auto reach = reachable_values(*this);
  std::set<Rational> reach_set(reach.begin(), reach.end());
  for (const auto& v : values_)
    if (v != mr_ && !reach_set.count(v)) unreachable_.push_back(v);
}

MetricPropertyReport check_properties(const RoutingMetric& metric) {
  const auto& values = metric.values();
  const auto& weights = metric.weights();
  if (values.empty() || weights.empty()) throw input_error("metric with empty sample");

  MetricPropertyReport rep;
  rep.domain_exhaustive = metric.values_exhaustive() && metric.weights_exhaustive();

  rep.bounded = true;
  for (const auto& m : values)
    for (const auto& w : weights) {
      MetricValue out = metric.met(m, w);
      if (!(metric.less(out, m) || out == m)) {
        rep.bounded = false;
        goto monotonic;
      }
    }
monotonic:
  rep.monotonic = true;
  for (const auto& m : values) {
    for (const auto& m2 : values) {
      if (!metric.less(m, m2)) continue;
      for (const auto& w : weights) {
        MetricValue a = metric.met(m, w);
        MetricValue b = metric.met(m2, w);
        if (!(metric.less(a, b) || a == b)) {
          rep.monotonic = false;
          goto decreasing;
        }
      }
    }
  }
decreasing:
  rep.maximizable = rep.bounded && rep.monotonic;

  rep.strictly_decreasing = true;
  for (const auto& m : values) {
    bool all_less = true, all_equal = true;
    for (const auto& w : weights) {
      MetricValue out = metric.met(m, w);
      if (!metric.less(out, m)) all_less = false;
      if (out != m) all_equal = false;
    }
    if (all_equal) rep.fixed_points.push_back(m);
    if (!all_less && !all_equal) rep.strictly_decreasing = false;
  }

  rep.strongly_maximizable =
      rep.maximizable &&
      (values.size() == 1 ||
       (values.size() >= 2 && rep.strictly_decreasing && rep.fixed_points.size() == 1));
  return rep;
}

std::vector<MetricValue> reachable_values(const RoutingMetric& metric) {
  std::set<Rational> seen{metric.mr()};
  std::vector<MetricValue> frontier{metric.mr()};
  std::size_t cap = metric.values().size();
  for (std::size_t depth = 0; depth < cap && !frontier.empty(); ++depth) {
    std::vector<MetricValue> next;
    for (const auto& m : frontier)
      for (const auto& w : metric.weights()) {
        MetricValue out = metric.met(m, w);
        if (seen.insert(out).second) next.push_back(out);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace byzstab
