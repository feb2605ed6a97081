#pragma once

#include "byzstab/system.hpp"

namespace byzstab {

/// One-hop view a process acts on: its own state plus, per local label, the
/// neighbor's level, the incident edge weight, and the neighbor's hop bound.
struct NeighborView {
  MetricValue level;
  EdgeWeight weight;
  int dist;
};

struct ProcessView {
  bool is_root = false;
  ProcessState self;
  std::vector<NeighborView> neighbors;
  int dist_bound = 0;  // the system size n; dist values live in [0..n]
};

ProcessView view_of(const WeightedSystem& system, const Configuration& config, ProcessId v);

/// The guarded action of a correct process.
///
/// Root: (prnt=bot, level=mr, dist=0).
/// Non-root: take the order-maximum of met(level_u, w_u) over neighbors whose
/// dist is below the bound, adopt the maximizing neighbor with the smallest
/// (dist, label), and set dist to the parent's dist plus one. The dist field
/// is auxiliary bookkeeping (not an O-variable): chains of prnt pointers must
/// descend in dist, which starves pointer cycles that the level values alone
/// cannot expose when met preserves a value across an edge.
ProcessState local_rule(const RoutingMetric& metric, const ProcessView& view);

/// A process is enabled when its rule would change any part of its state.
bool is_enabled(const RoutingMetric& metric, const ProcessView& view);

ProcessState local_rule(const WeightedSystem& system, const Configuration& config, ProcessId v);
bool is_enabled(const WeightedSystem& system, const Configuration& config, ProcessId v);

}  // namespace byzstab
