#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "byzstab/protocol.hpp"
#include "byzstab/system.hpp"

namespace byzstab {

enum class DaemonKind { Central, Distributed };

/// Weakly fair randomized daemon: any process enabled for `fairness_window`
/// consecutive steps is activated next (window 0 means 4n). The central kind
/// activates at most one process per step.
struct Schedule {
  DaemonKind daemon = DaemonKind::Central;
  int fairness_window = 0;
  std::uint64_t seed = 0;
  bool include_byzantine = false;  // byzantine processes are driven through the strategy
};

struct ByzWrite {
  ProcessId target;
  ProcessState state;
};

struct NoAdversary {};
/// Replays the root's action onto its mirror image through the scenario's
/// graph automorphism, in the same step as the root.
struct MirrorRoot {
  std::map<ProcessId, ProcessId> symmetry;
};
/// Scheduled Byzantine processes execute the protocol as if correct.
struct BehaveCorrectly {};
/// First step only: every Byzantine process takes (prnt=bot, level=mr, dist=0).
struct ResetRootState {};
/// Each step, each Byzantine process is rewritten with a random type-valid
/// state with this probability.
struct RandomWrites {
  double rate = 0.5;
};
struct ScriptedWrites {
  std::map<int, std::vector<ByzWrite>> at_step;  // 1-based step index
};

using AdversaryStrategy =
    std::variant<NoAdversary, MirrorRoot, BehaveCorrectly, ResetRootState, RandomWrites,
                 ScriptedWrites>;

std::string strategy_name(const AdversaryStrategy& strategy);

struct StopCondition {
  enum class Kind { MaxSteps, Quiescence, Predicate };
  Kind kind = Kind::MaxSteps;
  int max_steps = 0;  // hard cap for every kind
  std::function<bool(const Configuration&)> predicate;

  static StopCondition steps(int n) { return {Kind::MaxSteps, n, nullptr}; }
  static StopCondition quiescence(int cap) { return {Kind::Quiescence, cap, nullptr}; }
  static StopCondition when(std::function<bool(const Configuration&)> p, int cap) {
    return {Kind::Predicate, cap, std::move(p)};
  }
};

struct TraceStep {
  std::vector<ProcessId> activated;  // correct processes only
  std::vector<ByzWrite> writes;
  Configuration after;
};

struct TraceMeta {
  std::string daemon;
  std::string strategy;
  std::uint64_t schedule_seed = 0;
  std::uint64_t strategy_seed = 0;
  int fairness_window = 0;
  int rounds = 0;
  bool budget_hit = false;
  bool stop_reached = false;
};

struct ExecutionTrace {
  Configuration initial;
  std::vector<TraceStep> steps;
  TraceMeta meta;

  int length() const { return static_cast<int>(steps.size()); }
  /// Configuration index i in [0..length()]; 0 is the initial configuration.
  const Configuration& config_at(int i) const {
    return i == 0 ? initial : steps[static_cast<std::size_t>(i - 1)].after;
  }
};

/// One synchronous transition: every activated correct process applies its
/// rule against the old configuration, then the adversary writes land.
/// Rejects activation of Byzantine processes and writes to correct ones.
Configuration apply_step(const WeightedSystem& system, const Configuration& config,
                         const std::vector<ProcessId>& activated,
                         const std::vector<ByzWrite>& writes);

std::vector<ProcessId> enabled_processes(const WeightedSystem& system,
                                         const Configuration& config);
bool quiescent(const WeightedSystem& system, const Configuration& config);

/// Mirror writes for one step: when the root acted, copy its new state onto
/// its image with the parent pointer translated through the automorphism.
std::vector<ByzWrite> mirror_strategy_writes(const WeightedSystem& system,
                                             const Configuration& after_protocol,
                                             const std::vector<ProcessId>& activated,
                                             const MirrorRoot& mirror);

ExecutionTrace run(const WeightedSystem& system, Configuration initial, const Schedule& schedule,
                   const AdversaryStrategy& strategy, const StopCondition& stop);

}  // namespace byzstab
