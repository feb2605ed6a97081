#pragma once

#include <memory>

#include "byzstab/analysis.hpp"
#include "byzstab/engine.hpp"

namespace byzstab {

/// One scripted phase of an adversarial cycle: an adversary strategy driven
/// under a fair central schedule until the waypoint configuration is reached.
struct ScenarioPhase {
  std::string name;
  AdversaryStrategy strategy;
  bool include_byzantine = false;
  std::function<bool(const Configuration&)> waypoint;
  std::string waypoint_desc;
};

struct Scenario {
  std::string name;
  std::shared_ptr<const WeightedSystem> system;
  Configuration initial;
  ScenarioPhase entry;                // from the initial configuration to the first waypoint
  std::vector<ScenarioPhase> cycle;   // repeated K times
  ContainmentArea area;               // the area or radius the disruptions count against
  std::map<ProcessId, ProcessId> symmetry;
  int per_phase_budget = 0;           // 0: 50 * n activations
};

/// Chain of 2c+4 processes with mirrored weights realizing a strictly
/// decreasing value chain of length c+2; the adversary cycle is
/// mirror -> behave-correctly -> reset. Requires c+3 distinct chained values.
Scenario build_theorem5_case1(const MetricPtr& metric, int c, std::uint64_t seed);

/// Variant for metrics that are not strictly decreasing: a value m with a
/// weight that preserves it and a weight that lowers it; filler edges carry
/// the preserved value out to the center.
Scenario build_theorem5_case2(const MetricPtr& metric, int c, std::uint64_t seed);

/// Variant keyed on the fixed-point census of a strictly decreasing metric:
/// no fixed point falls back to the chain shape; two or more would need both
/// fixed points reachable from mr, which boundedness plus monotonicity rule
/// out, so that branch reports why it cannot be built.
Scenario build_theorem5_case3(const MetricPtr& metric, int c, std::uint64_t seed);

enum class GadgetArea { Empty, V, VPrime };

/// Six-process gadget (r,u,u',v,v',b) with met(mr,w)=m and met(m,w') below m;
/// disruptions are measured against a candidate area strictly inside {v,v'}.
Scenario build_theorem6_gadget(const MetricPtr& metric, GadgetArea area, std::uint64_t seed);

struct CycleRunResult {
  ExecutionTrace trace;
  DisruptionReport report;
  int cycles_completed = 0;
};

/// Runs the entry phase and K adversary cycles, asserting every waypoint, and
/// counts disruptions over the concatenated trace.
CycleRunResult run_cycles(const Scenario& scenario, int cycles);

/// Step budget for one phase: the scenario's own, then the BYZSTAB_BUDGET
/// environment override, then 50 activations per process.
int phase_budget(const Scenario& scenario);

}  // namespace byzstab
