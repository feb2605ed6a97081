#include "byzstab/oracle.hpp"

#include <algorithm>
#include <queue>

namespace byzstab {

namespace {

constexpr long kPathBudget = 2'000'000;

void enumerate_paths(const WeightedSystem& system, ProcessId at, ProcessId target,
                     MetricValue value, std::vector<bool>& on_path,
                     std::optional<MetricValue>& best, long& budget) {
  const RoutingMetric& metric = system.metric();
  if (at == target) {
    if (!best || metric.less(*best, value)) best = value;
    return;
  }
  for (const auto& nb : system.neighbors(at)) {
    if (on_path[static_cast<std::size_t>(nb.id)]) continue;
    if (--budget < 0) throw budget_error("path enumeration budget exceeded");
    on_path[static_cast<std::size_t>(nb.id)] = true;
    enumerate_paths(system, nb.id, target, metric.met(value, nb.weight), on_path, best, budget);
    on_path[static_cast<std::size_t>(nb.id)] = false;
  }
}

}  // namespace

MetricValue mu_brute_force(const WeightedSystem& system, ProcessId u, ProcessId v,
                           MetricValue root_level) {
  if (system.size() > 10) throw budget_error("mu_brute_force limited to n <= 10");
  // walk outward from the pinned root v so the prefix recurrence applies directly
  std::vector<bool> on_path(static_cast<std::size_t>(system.size()), false);
  on_path[static_cast<std::size_t>(v)] = true;
  std::optional<MetricValue> best;
  long budget = kPathBudget;
  enumerate_paths(system, v, u, root_level, on_path, best, budget);
  if (!best) throw input_error("no path between processes");  // cannot happen: connected
  return *best;
}

MetricValue mu_brute_force(const WeightedSystem& system, ProcessId u, ProcessId v) {
  return mu_brute_force(system, u, v, system.metric().mr());
}

std::vector<MetricValue> mu_all_from(const WeightedSystem& system, ProcessId root,
                                     MetricValue root_level) {
  const RoutingMetric& metric = system.metric();
  std::vector<std::optional<MetricValue>> best(static_cast<std::size_t>(system.size()));
  std::vector<bool> settled(static_cast<std::size_t>(system.size()), false);
  best[static_cast<std::size_t>(root)] = root_level;

  // pop the order-greatest tentative value first; ids break ties for determinism
  auto cmp = [&metric](const std::pair<MetricValue, ProcessId>& a,
                       const std::pair<MetricValue, ProcessId>& b) {
    if (a.first != b.first) return metric.less(a.first, b.first);
    return a.second > b.second;
  };
  std::priority_queue<std::pair<MetricValue, ProcessId>,
                      std::vector<std::pair<MetricValue, ProcessId>>, decltype(cmp)>
      pq(cmp);
  pq.push({root_level, root});
  while (!pq.empty()) {
    auto [val, x] = pq.top();
    pq.pop();
    if (settled[static_cast<std::size_t>(x)]) continue;
    settled[static_cast<std::size_t>(x)] = true;
    for (const auto& nb : system.neighbors(x)) {
      if (settled[static_cast<std::size_t>(nb.id)]) continue;
      MetricValue cand = metric.met(val, nb.weight);
      auto& slot = best[static_cast<std::size_t>(nb.id)];
      if (!slot || metric.less(*slot, cand)) {
        slot = cand;
        pq.push({cand, nb.id});
      }
    }
  }
  std::vector<MetricValue> out;
  out.reserve(static_cast<std::size_t>(system.size()));
  for (auto& b : best) out.push_back(b ? *b : metric.mr());
  return out;
}

MetricValue mu(const WeightedSystem& system, ProcessId u, ProcessId v, MetricValue root_level) {
  if (system.metric().maximizable())
    return mu_all_from(system, v, root_level)[static_cast<std::size_t>(u)];
  return mu_brute_force(system, u, v, root_level);
}

MetricValue mu(const WeightedSystem& system, ProcessId u, ProcessId v) {
  return mu(system, u, v, system.metric().mr());
}

MetricValue MuTable::at(ProcessId u, ProcessId designated_root) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == designated_root) return values_[i][static_cast<std::size_t>(u)];
  throw input_error("not a designated root: " + system_->name_of(designated_root));
}

std::optional<MetricValue> MuTable::best_byzantine(ProcessId u) const {
  std::optional<MetricValue> best;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (roots_[i] == system_->root()) continue;
    const MetricValue& val = values_[i][static_cast<std::size_t>(u)];
    if (!best || system_->metric().less(*best, val)) best = val;
  }
  return best;
}

MuTable compute_mu_table(const WeightedSystem& system) {
  auto roots = system.designated_roots();
  std::vector<std::vector<MetricValue>> values;
  values.reserve(roots.size());
  const MetricValue mr = system.metric().mr();
  for (ProcessId rho : roots) {
    if (system.metric().maximizable()) {
      values.push_back(mu_all_from(system, rho, mr));
    } else {
      std::vector<MetricValue> col;
      for (ProcessId u = 0; u < system.size(); ++u)
        col.push_back(mu_brute_force(system, u, rho, mr));
      values.push_back(std::move(col));
    }
  }
  return MuTable(system, roots, std::move(values));
}

std::vector<ForestEntry> reference_forest(const WeightedSystem& system, const MuTable& table) {
  std::vector<ForestEntry> out;
  out.reserve(static_cast<std::size_t>(system.size()));
  for (ProcessId u = 0; u < system.size(); ++u) {
    if (system.is_byzantine(u)) {
      out.push_back({u, system.metric().mr()});
      continue;
    }
    ProcessId best_root = system.root();
    MetricValue best = table.at(u, best_root);
    for (ProcessId rho : table.designated_roots()) {
      MetricValue val = table.at(u, rho);
      if (system.metric().less(best, val)) {
        best = val;
        best_root = rho;
      }
    }
    out.push_back({best_root, best});
  }
  return out;
}

nlohmann::json mu_table_json(const WeightedSystem& system, const MuTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (ProcessId u = 0; u < system.size(); ++u) {
    nlohmann::json row{{"process", system.name_of(u)}};
    nlohmann::json per_root = nlohmann::json::object();
    for (ProcessId rho : table.designated_roots())
      per_root[system.name_of(rho)] = system.metric().display_value(table.at(u, rho));
    row["mu"] = per_root;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace byzstab
