#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "byzstab/errors.hpp"
#include "byzstab/rational.hpp"

namespace byzstab {

using MetricValue = Rational;
using EdgeWeight = Rational;

enum class OrderDir {
  Asc,  // a comes before b in the order when a < b numerically; the maximum is the largest number
  Desc  // a comes before b when a > b numerically; the maximum is the smallest number (SP/BFS)
};

enum class BuiltinMetric { SP, F, R, NC, BFS, MET };

struct MetricOptions {
  int value_window = 64;     // sampling window [0..value_window] for declared-infinite value sets
  int weight_window = 8;     // sampling window [0..weight_window] for declared-infinite weight sets
  std::int64_t flow_mr = 10; // maximum value supplied to the flow metric
  int grid_denominator = 16; // densest denominator of the rational grid sampling [0,1]
};

struct MetricPropertyReport {
  bool bounded = false;
  bool monotonic = false;
  bool maximizable = false;  // always bounded && monotonic
  bool strictly_decreasing = false;
  std::vector<MetricValue> fixed_points;
  bool strongly_maximizable = false;
  bool domain_exhaustive = false;  // true only when both value and weight sets were fully enumerated
};

/// A routing metric: value set M, weight set W, a propagation function met,
/// the maximum value mr, and a total order. Infinite sets (naturals, the
/// rational interval [0,1]) carry a finite sampling window and are flagged
/// non-exhaustive; every verdict derived from a window says so.
class RoutingMetric {
 public:
  static RoutingMetric builtin(BuiltinMetric kind, const MetricOptions& opt = {});
  static RoutingMetric builtin_by_name(const std::string& name, const MetricOptions& opt = {});

  /// Fully enumerated table metric. met_table[i][j] is met(values[i], weights[j]) and
  /// must itself be listed in `values`. Symbolic domains use display names; the
  /// numeric value of a symbolic entry is its position in the list.
  static RoutingMetric table(std::string name, std::vector<MetricValue> values,
                             std::vector<EdgeWeight> weights,
                             std::vector<std::vector<MetricValue>> met_table, MetricValue mr,
                             OrderDir order,
                             std::vector<std::string> value_names = {},
                             std::vector<std::string> weight_names = {});

  const std::string& name() const { return name_; }
  const std::vector<MetricValue>& values() const { return values_; }
  const std::vector<EdgeWeight>& weights() const { return weights_; }
  MetricValue mr() const { return mr_; }
  OrderDir order() const { return order_; }
  bool values_exhaustive() const { return values_exhaustive_; }
  bool weights_exhaustive() const { return weights_exhaustive_; }
  bool is_table() const { return static_cast<bool>(met_table_); }
  std::optional<BuiltinMetric> builtin_kind() const { return builtin_kind_; }

  MetricValue met(const MetricValue& m, const EdgeWeight& w) const;

  /// The strict total order: true when a comes strictly before b (b is closer to mr).
  bool less(const MetricValue& a, const MetricValue& b) const {
    return order_ == OrderDir::Asc ? a < b : b < a;
  }
  bool leq(const MetricValue& a, const MetricValue& b) const { return a == b || less(a, b); }
  MetricValue max_of(const MetricValue& a, const MetricValue& b) const {
    return less(a, b) ? b : a;
  }

  /// Membership in the declared domain (not merely the sampling window).
  bool value_in_domain(const MetricValue& m) const;
  bool weight_in_domain(const EdgeWeight& w) const;

  std::string display_value(const MetricValue& m) const;
  std::string display_weight(const EdgeWeight& w) const;
  std::optional<MetricValue> value_by_name(const std::string& s) const;
  std::optional<EdgeWeight> weight_by_name(const std::string& s) const;

  const MetricPropertyReport& properties() const { return props_; }
  bool maximizable() const { return props_.maximizable; }

  /// Utility condition over the sample: every sampled value other than mr is
  /// reachable from mr by chaining met through sampled weights.
  bool utility_ok() const { return unreachable_.empty(); }
  const std::vector<MetricValue>& unreachable_values() const { return unreachable_; }

 private:
  RoutingMetric() = default;
  void finalize();  // validates mr, computes properties and reachability

  std::string name_;
  std::optional<BuiltinMetric> builtin_kind_;
  std::vector<MetricValue> values_;
  std::vector<EdgeWeight> weights_;
  MetricValue mr_;
  OrderDir order_ = OrderDir::Asc;
  bool values_exhaustive_ = true;
  bool weights_exhaustive_ = true;
  std::int64_t flow_mr_ = 0;

  // table metrics only
  std::shared_ptr<const std::map<std::pair<Rational, Rational>, MetricValue>> met_table_;
  std::vector<std::string> value_names_;
  std::vector<std::string> weight_names_;

  MetricPropertyReport props_;
  std::vector<MetricValue> unreachable_;
};

using MetricPtr = std::shared_ptr<const RoutingMetric>;

MetricPropertyReport check_properties(const RoutingMetric& metric);

/// Values reachable from mr by met-chains within the sample, mr included.
/// Chain length is capped at the sample size: along a shortest chain the
/// values are pairwise distinct, so longer chains add nothing.
std::vector<MetricValue> reachable_values(const RoutingMetric& metric);

}  // namespace byzstab
