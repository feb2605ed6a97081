#include "byzstab/protocol.hpp"

namespace byzstab {

ProcessView view_of(const WeightedSystem& system, const Configuration& config, ProcessId v) {
  ProcessView view;
  view.is_root = (v == system.root());
  view.self = config.at(v);
  view.dist_bound = system.size();
  const auto& nbs = system.neighbors(v);
  view.neighbors.reserve(nbs.size());
  for (const auto& nb : nbs)
    view.neighbors.push_back({config.at(nb.id).level, nb.weight, config.at(nb.id).dist});
  return view;
}

ProcessState local_rule(const RoutingMetric& metric, const ProcessView& view) {
  if (view.is_root) return ProcessState{std::nullopt, metric.mr(), 0};

  const int n = view.dist_bound;
  int chosen = -1;
  std::optional<MetricValue> best;
  for (std::size_t label = 0; label < view.neighbors.size(); ++label) {
    const NeighborView& nb = view.neighbors[label];
    if (nb.dist >= n) continue;
    MetricValue offer = metric.met(nb.level, nb.weight);
    if (!best || metric.less(*best, offer)) {
      best = offer;
      chosen = static_cast<int>(label);
    } else if (offer == *best && chosen >= 0 &&
               nb.dist < view.neighbors[static_cast<std::size_t>(chosen)].dist) {
      chosen = static_cast<int>(label);
    }
  }
  if (chosen >= 0)
    return ProcessState{chosen, *best,
                        view.neighbors[static_cast<std::size_t>(chosen)].dist + 1};

  // every neighbor is at the bound: detach until one of them recovers
  std::optional<MetricValue> fallback;
  int fb_label = 0;
  for (std::size_t label = 0; label < view.neighbors.size(); ++label) {
    MetricValue offer = metric.met(view.neighbors[label].level, view.neighbors[label].weight);
    if (!fallback || metric.less(*fallback, offer)) {
      fallback = offer;
      fb_label = static_cast<int>(label);
    }
  }
  (void)fb_label;
  return ProcessState{std::nullopt, fallback ? *fallback : metric.mr(), n};
}

bool is_enabled(const RoutingMetric& metric, const ProcessView& view) {
  return local_rule(metric, view) != view.self;
}

ProcessState local_rule(const WeightedSystem& system, const Configuration& config, ProcessId v) {
  return local_rule(system.metric(), view_of(system, config, v));
}

bool is_enabled(const WeightedSystem& system, const Configuration& config, ProcessId v) {
  return is_enabled(system.metric(), view_of(system, config, v));
}

}  // namespace byzstab
