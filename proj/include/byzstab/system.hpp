#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "byzstab/metric.hpp"

namespace byzstab {

using ProcessId = int;

struct Neighbor {
  ProcessId id;
  EdgeWeight weight;
};

struct GraphSpec {
  MetricPtr metric;
  std::vector<std::string> nodes;
  std::string root;
  std::vector<std::string> byzantine;
  // (node, node, weight)
  std::vector<std::tuple<std::string, std::string, EdgeWeight>> edges;
};

/// Connected simple weighted graph with a distinguished root and a Byzantine
/// set. Process ids are 0-based with the root at 0; neighbor lists are sorted
/// by global id and a neighbor's position in that list is its local label.
class WeightedSystem {
 public:
  int size() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }
  ProcessId root() const { return root_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name_of(ProcessId v) const { return names_[static_cast<std::size_t>(v)]; }
  std::optional<ProcessId> id_of(const std::string& name) const;

  bool is_byzantine(ProcessId v) const { return byz_mask_[static_cast<std::size_t>(v)]; }
  bool is_correct(ProcessId v) const { return !is_byzantine(v); }
  const std::vector<ProcessId>& byzantine() const { return byzantine_; }
  /// Root first, then Byzantine processes: the candidate tree roots.
  std::vector<ProcessId> designated_roots() const;

  const std::vector<Neighbor>& neighbors(ProcessId v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  std::optional<int> label_of(ProcessId v, ProcessId u) const;
  ProcessId neighbor_at(ProcessId v, int label) const {
    return adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(label)].id;
  }

  const RoutingMetric& metric() const { return *metric_; }
  const MetricPtr& metric_ptr() const { return metric_; }

  /// Hop distance by breadth-first search.
  int distance(ProcessId u, ProcessId v) const;

  friend WeightedSystem build_system(const GraphSpec& spec);

 private:
  MetricPtr metric_;
  std::vector<std::string> names_;
  ProcessId root_ = 0;
  std::vector<ProcessId> byzantine_;
  std::vector<bool> byz_mask_;
  std::vector<std::vector<Neighbor>> adj_;
  int edge_count_ = 0;
};

WeightedSystem build_system(const GraphSpec& spec);

/// Random connected simple graph: a random spanning tree plus extra edges with
/// probability extra_edge_p, weights drawn from the metric's weight sample,
/// byz_count random non-root Byzantine processes. Deterministic for a seed.
WeightedSystem random_system(const MetricPtr& metric, int n, std::uint64_t seed,
                             double extra_edge_p = 0.25, int byz_count = 0);

struct ProcessState {
  std::optional<int> prnt;  // local neighbor label, nullopt for the bottom pointer
  MetricValue level;
  int dist = 0;  // auxiliary hop bound, not an O-variable

  friend bool operator==(const ProcessState& a, const ProcessState& b) {
    return a.prnt == b.prnt && a.level == b.level && a.dist == b.dist;
  }
  friend bool operator!=(const ProcessState& a, const ProcessState& b) { return !(a == b); }
};

/// prnt and level are the output variables; dist is auxiliary.
inline bool ovars_equal(const ProcessState& a, const ProcessState& b) {
  return a.prnt == b.prnt && a.level == b.level;
}

struct Configuration {
  std::vector<ProcessState> states;

  const ProcessState& at(ProcessId v) const { return states[static_cast<std::size_t>(v)]; }
  ProcessState& at(ProcessId v) { return states[static_cast<std::size_t>(v)]; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.states == b.states;
  }
  friend bool operator!=(const Configuration& a, const Configuration& b) { return !(a == b); }
};

Configuration random_configuration(const WeightedSystem& system, std::uint64_t seed);

/// DOT rendering: weighted edges, prnt arrows when a configuration is given,
/// fills for the containment areas when given (S_B light, S_B* dark).
void write_dot(std::ostream& os, const WeightedSystem& system,
               const Configuration* config = nullptr,
               const std::vector<ProcessId>* sb = nullptr,
               const std::vector<ProcessId>* sb_star = nullptr);

}  // namespace byzstab
