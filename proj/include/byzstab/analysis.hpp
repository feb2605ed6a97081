#pragma once

#include <map>

#include <json.hpp>

#include "byzstab/engine.hpp"
#include "byzstab/oracle.hpp"

namespace byzstab {

enum class AreaKind { SB, SBStar, Radius };

/// A containment area: the set of correct processes the Byzantine processes
/// may legitimately disturb. Area-correct processes are the correct processes
/// outside `members`.
struct ContainmentArea {
  AreaKind kind = AreaKind::SB;
  int radius = 0;  // Radius kind only
  std::vector<ProcessId> members;

  bool contains(ProcessId v) const;
  /// Correct and outside the area.
  bool area_correct(const WeightedSystem& system, ProcessId v) const {
    return system.is_correct(v) && !contains(v);
  }
};

/// SB: correct non-root processes at most as close (per the order) to the
/// root as to the best Byzantine process. SBStar: strictly closer to a
/// Byzantine process. Radius c: correct processes within c hops of some
/// Byzantine process.
ContainmentArea compute_area(const WeightedSystem& system, AreaKind kind, int radius = 0);
ContainmentArea compute_area(const WeightedSystem& system, const MuTable& table, AreaKind kind,
                             int radius = 0);

/// Clause-4 handling: Pinned evaluates mu with the path's terminus held at mr
/// (the proofs' reading); Actual uses the terminus's current level.
enum class MuMode { Pinned, Actual };

/// Per-process legitimacy. Root: bottom parent and level mr. Otherwise the
/// prnt chain must reach, cycle-free, a terminus in B or {r} holding
/// (bot, mr), with the met recurrence and the local-maximum condition at
/// every hop and the end value equal to mu(v, terminus).
bool check_spec(const WeightedSystem& system, const Configuration& config, ProcessId v,
                MuMode mode = MuMode::Pinned, const MuTable* pinned = nullptr);

bool is_area_legitimate(const WeightedSystem& system, const Configuration& config,
                        const ContainmentArea& area, MuMode mode = MuMode::Pinned,
                        const MuTable* pinned = nullptr);

/// Operational stability: no area-correct process is enabled. With a
/// deterministic single-rule protocol this is the per-configuration reading of
/// "never changes its O-variables while the Byzantine processes stay silent".
bool is_area_stable(const WeightedSystem& system, const Configuration& config,
                    const ContainmentArea& area);

struct DisruptionWindow {
  int start = 0;  // legitimate and stable configuration index
  int end = 0;    // first legitimate and stable index after start
  std::vector<ProcessId> changed;  // area-correct processes that changed O-variables inside
};

struct DisruptionReport {
  std::vector<DisruptionWindow> windows;
  int total = 0;
  std::map<ProcessId, int> per_process_changes;  // area-correct processes, whole trace
  std::vector<int> legit_stable_indices;
  bool unclosed_window = false;
  int unclosed_start = -1;
};

DisruptionReport count_disruptions(const WeightedSystem& system, const ExecutionTrace& trace,
                                   const ContainmentArea& area, MuMode mode = MuMode::Pinned);

/// Independent re-check of the four disruption clauses for a reported window.
bool verify_window_clauses(const WeightedSystem& system, const ExecutionTrace& trace,
                           const ContainmentArea& area, const DisruptionWindow& window,
                           MuMode mode = MuMode::Pinned);

struct ContainmentVerdict {
  bool reached = false;
  int suffix_start = -1;  // earliest index from which the containment predicate holds
  bool holds_from_start = false;  // the stricter from-the-first-configuration form
};

/// Earliest suffix of the trace in which every configuration is
/// area-legitimate and no area-correct process changes an O-variable.
ContainmentVerdict check_ta_strict_containment(const WeightedSystem& system,
                                               const ExecutionTrace& trace,
                                               const ContainmentArea& area,
                                               MuMode mode = MuMode::Pinned);

nlohmann::json area_json(const WeightedSystem& system, const ContainmentArea& area);
nlohmann::json disruption_report_json(const WeightedSystem& system, const DisruptionReport& rep);

}  // namespace byzstab
