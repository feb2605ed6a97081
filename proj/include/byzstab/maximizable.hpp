#pragma once

#include <optional>

#include "byzstab/system.hpp"

namespace byzstab {

/// True when the system admits a spanning tree in which every rooted tree
/// path is a maximum metric path. Decided by explicit spanning-tree
/// enumeration against path-enumeration mu values; n and edge count are
/// budget-guarded.
bool max_metric_tree_exists(const WeightedSystem& system);

struct MaximizableVerdict {
  bool maximizable = true;
  std::optional<WeightedSystem> counterexample;
  int trials_run = 0;
};

/// Samples `trials` weighted systems of up to max_nodes processes and tests
/// each for a maximum metric tree. The sample mixes uniform random systems
/// with systems derived from the metric's bounded/monotonicity violations
/// (twin chains realizing a value that some weight improves; two chains
/// joined at one node plus a pendant for an order flip), so a metric whose
/// violations are realizable within max_nodes cannot slip through.
MaximizableVerdict brute_force_maximizable(const MetricPtr& metric, int max_nodes, int trials,
                                           std::uint64_t seed);

/// Number of violation-derived trial systems realizable within max_nodes.
/// Zero for a clean metric; also zero when every violation needs value
/// chains longer than the node budget allows, in which case random trials of
/// that size cannot exhibit a counterexample either.
int violation_gadget_count(const MetricPtr& metric, int max_nodes);

}  // namespace byzstab
