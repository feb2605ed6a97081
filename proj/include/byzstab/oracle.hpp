#pragma once

#include <map>

#include <json.hpp>

#include "byzstab/system.hpp"

namespace byzstab {

/// Best achievable metric at u over simple paths to v, with v pinned at
/// root_level (mr unless stated otherwise). Uses an order-driven best-first
/// relaxation, valid for maximizable metrics; falls back to exhaustive path
/// enumeration for anything else while the graph is small.
MetricValue mu(const WeightedSystem& system, ProcessId u, ProcessId v);
MetricValue mu(const WeightedSystem& system, ProcessId u, ProcessId v, MetricValue root_level);

/// Same quantity by explicit enumeration of all simple paths. Path-count
/// budget guards against dense graphs; intended for n <= 10.
MetricValue mu_brute_force(const WeightedSystem& system, ProcessId u, ProcessId v);
MetricValue mu_brute_force(const WeightedSystem& system, ProcessId u, ProcessId v,
                           MetricValue root_level);

/// One best-first sweep from root pinned at root_level; best value per process.
std::vector<MetricValue> mu_all_from(const WeightedSystem& system, ProcessId root,
                                     MetricValue root_level);

/// Pinned table: mu(u, rho) for every process u and designated root rho
/// (the real root and each Byzantine process), each rho held at mr.
class MuTable {
 public:
  MuTable(const WeightedSystem& system, const std::vector<ProcessId>& roots,
          std::vector<std::vector<MetricValue>> values)
      : system_(&system), roots_(roots), values_(std::move(values)) {}

  const std::vector<ProcessId>& designated_roots() const { return roots_; }
  MetricValue at(ProcessId u, ProcessId designated_root) const;
  /// Order-maximum of mu(u, b) over Byzantine b; empty when B is empty.
  std::optional<MetricValue> best_byzantine(ProcessId u) const;

 private:
  const WeightedSystem* system_;
  std::vector<ProcessId> roots_;
  std::vector<std::vector<MetricValue>> values_;  // [root index][process]
};

MuTable compute_mu_table(const WeightedSystem& system);

struct ForestEntry {
  ProcessId best_root;
  MetricValue value;
};

/// Ground-truth assignment: for each correct process the order-maximum of
/// mu(u, rho) over designated roots, ties resolved toward the real root then
/// the lowest id. Byzantine processes map to themselves at mr.
std::vector<ForestEntry> reference_forest(const WeightedSystem& system, const MuTable& table);

nlohmann::json mu_table_json(const WeightedSystem& system, const MuTable& table);

}  // namespace byzstab
