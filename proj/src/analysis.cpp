#include "byzstab/analysis.hpp"

#include <algorithm>

namespace byzstab {

bool ContainmentArea::contains(ProcessId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

ContainmentArea compute_area(const WeightedSystem& system, AreaKind kind, int radius) {
  if (kind == AreaKind::Radius) {
    ContainmentArea area{kind, radius, {}};
    for (ProcessId v = 0; v < system.size(); ++v) {
      if (system.is_byzantine(v)) continue;
      for (ProcessId b : system.byzantine())
        if (system.distance(v, b) <= radius) {
          area.members.push_back(v);
          break;
        }
    }
    return area;
  }
  MuTable table = compute_mu_table(system);
  return compute_area(system, table, kind, radius);
}

ContainmentArea compute_area(const WeightedSystem& system, const MuTable& table, AreaKind kind,
                             int radius) {
  if (kind == AreaKind::Radius) return compute_area(system, kind, radius);
  ContainmentArea area{kind, 0, {}};
  const RoutingMetric& metric = system.metric();
  for (ProcessId v = 0; v < system.size(); ++v) {
    if (system.is_byzantine(v)) continue;
    if (kind == AreaKind::SB && v == system.root()) continue;
    auto best_byz = table.best_byzantine(v);
    if (!best_byz) continue;  // no Byzantine processes: empty area
    MetricValue to_root = table.at(v, system.root());
    bool in = kind == AreaKind::SB ? metric.leq(to_root, *best_byz)
                                   : metric.less(to_root, *best_byz);
    if (in) area.members.push_back(v);
  }
  return area;
}

namespace {

// Follows the prnt chain from v; returns the node sequence v=v_k,...,v_0 in
// reverse (terminus last) or nothing if the chain cycles or dead-ends.
std::optional<std::vector<ProcessId>> prnt_chain(const WeightedSystem& system,
                                                 const Configuration& config, ProcessId v) {
  std::vector<ProcessId> chain{v};
  std::vector<bool> seen(static_cast<std::size_t>(system.size()), false);
  seen[static_cast<std::size_t>(v)] = true;
  ProcessId cur = v;
  while (config.at(cur).prnt) {
    int label = *config.at(cur).prnt;
    if (label < 0 || label >= static_cast<int>(system.neighbors(cur).size())) return std::nullopt;
    cur = system.neighbor_at(cur, label);
    if (seen[static_cast<std::size_t>(cur)]) return std::nullopt;
    seen[static_cast<std::size_t>(cur)] = true;
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace

bool check_spec(const WeightedSystem& system, const Configuration& config, ProcessId v,
                MuMode mode, const MuTable* pinned) {
  const RoutingMetric& metric = system.metric();
  const ProcessState& st = config.at(v);
  if (v == system.root()) return !st.prnt && st.level == metric.mr();

  auto chain = prnt_chain(system, config, v);
  if (!chain) return false;
  ProcessId terminus = chain->back();
  if (terminus == v) return false;  // non-root with a bottom parent
  const ProcessState& tst = config.at(terminus);
  if (terminus != system.root() && !system.is_byzantine(terminus)) return false;
  if (tst.prnt || tst.level != metric.mr()) return false;

  // walk terminus -> v checking the recurrence and the local-maximum condition
  for (std::size_t idx = chain->size() - 1; idx > 0; --idx) {
    ProcessId child = (*chain)[idx - 1];
    ProcessId parent = (*chain)[idx];
    auto label = system.label_of(child, parent);
    if (!label) return false;
    EdgeWeight w = system.neighbors(child)[static_cast<std::size_t>(*label)].weight;
    MetricValue via_parent = metric.met(config.at(parent).level, w);
    if (config.at(child).level != via_parent) return false;
    for (const auto& nb : system.neighbors(child)) {
      MetricValue offer = metric.met(config.at(nb.id).level, nb.weight);
      if (metric.less(via_parent, offer)) return false;
    }
  }

  MetricValue expected = mode == MuMode::Pinned
                             ? (pinned ? pinned->at(v, terminus)
                                       : mu(system, v, terminus, metric.mr()))
                             : mu(system, v, terminus, tst.level);
  return st.level == expected;
}

bool is_area_legitimate(const WeightedSystem& system, const Configuration& config,
                        const ContainmentArea& area, MuMode mode, const MuTable* pinned) {
  for (ProcessId v = 0; v < system.size(); ++v)
    if (area.area_correct(system, v) && !check_spec(system, config, v, mode, pinned))
      return false;
  return true;
}

bool is_area_stable(const WeightedSystem& system, const Configuration& config,
                    const ContainmentArea& area) {
  for (ProcessId v = 0; v < system.size(); ++v)
    if (area.area_correct(system, v) && is_enabled(system, config, v)) return false;
  return true;
}

namespace {

std::vector<ProcessId> ovar_changers(const WeightedSystem& system, const Configuration& before,
                                     const Configuration& after, const ContainmentArea& area) {
  std::vector<ProcessId> out;
  for (ProcessId v = 0; v < system.size(); ++v)
    if (area.area_correct(system, v) && !ovars_equal(before.at(v), after.at(v)))
      out.push_back(v);
  return out;
}

}  // namespace

DisruptionReport count_disruptions(const WeightedSystem& system, const ExecutionTrace& trace,
                                   const ContainmentArea& area, MuMode mode) {
  DisruptionReport rep;
  const int len = trace.length();
  MuTable table = compute_mu_table(system);

  std::vector<bool> ls(static_cast<std::size_t>(len) + 1, false);
  for (int i = 0; i <= len; ++i) {
    const Configuration& cfg = trace.config_at(i);
    ls[static_cast<std::size_t>(i)] = is_area_legitimate(system, cfg, area, mode, &table) &&
                                      is_area_stable(system, cfg, area);
    if (ls[static_cast<std::size_t>(i)]) rep.legit_stable_indices.push_back(i);
  }

  for (ProcessId v = 0; v < system.size(); ++v)
    if (area.area_correct(system, v)) rep.per_process_changes[v] = 0;
  for (int i = 1; i <= len; ++i)
    for (ProcessId v :
         ovar_changers(system, trace.config_at(i - 1), trace.config_at(i), area))
      ++rep.per_process_changes[v];

  // scan: from each legitimate-and-stable index, a window opens when an
  // area-correct O-variable changes before the next such index
  int i = 0;
  while (i <= len) {
    if (!ls[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    int next = -1;
    for (int j = i + 1; j <= len; ++j)
      if (ls[static_cast<std::size_t>(j)]) {
        next = j;
        break;
      }
    std::vector<ProcessId> changed;
    int scan_end = next < 0 ? len : next;
    for (int j = i + 1; j <= scan_end; ++j) {
      auto c = ovar_changers(system, trace.config_at(j - 1), trace.config_at(j), area);
      for (ProcessId v : c)
        if (std::find(changed.begin(), changed.end(), v) == changed.end()) changed.push_back(v);
    }
    if (next < 0) {
      if (!changed.empty()) {
        rep.unclosed_window = true;
        rep.unclosed_start = i;
      }
      break;
    }
    if (!changed.empty()) {
      std::sort(changed.begin(), changed.end());
      rep.windows.push_back({i, next, std::move(changed)});
    }
    i = next;
  }
  rep.total = static_cast<int>(rep.windows.size());
  return rep;
}

bool verify_window_clauses(const WeightedSystem& system, const ExecutionTrace& trace,
                           const ContainmentArea& area, const DisruptionWindow& window,
                           MuMode mode) {
  MuTable table = compute_mu_table(system);
  auto legit_stable = [&](int i) {
    const Configuration& cfg = trace.config_at(i);
    return is_area_legitimate(system, cfg, area, mode, &table) &&
           is_area_stable(system, cfg, area);
  };
  // clause 1: a finite portion rho_0..rho_t with t > 1
  if (window.start < 0 || window.end > trace.length() || window.end - window.start < 2)
    return false;
  // clause 3: it starts legitimate and stable
  if (!legit_stable(window.start)) return false;
  // clause 4: it ends at the first legitimate-and-stable configuration after the start
  for (int j = window.start + 1; j < window.end; ++j)
    if (legit_stable(j)) return false;
  if (!legit_stable(window.end)) return false;
  // clause 2: it contains an O-variable change by an area-correct process
  bool any = false;
  for (int j = window.start + 1; j <= window.end; ++j)
    if (!ovar_changers(system, trace.config_at(j - 1), trace.config_at(j), area).empty())
      any = true;
  return any;
}

ContainmentVerdict check_ta_strict_containment(const WeightedSystem& system,
                                               const ExecutionTrace& trace,
                                               const ContainmentArea& area, MuMode mode) {
  const int len = trace.length();
  MuTable table = compute_mu_table(system);
  ContainmentVerdict verdict;

  std::vector<bool> legit(static_cast<std::size_t>(len) + 1, false);
  for (int i = 0; i <= len; ++i)
    legit[static_cast<std::size_t>(i)] =
        is_area_legitimate(system, trace.config_at(i), area, mode, &table);

  // earliest suffix start: all later configs legitimate, no later area-correct O-change
  int best = legit[static_cast<std::size_t>(len)] ? len : -1;
  for (int i = len - 1; i >= 0 && best == i + 1; --i) {
    if (legit[static_cast<std::size_t>(i)] &&
        ovar_changers(system, trace.config_at(i), trace.config_at(i + 1), area).empty())
      best = i;
  }
  verdict.reached = best >= 0;
  verdict.suffix_start = best;
  verdict.holds_from_start = verdict.reached && verdict.suffix_start == 0;
  return verdict;
}

nlohmann::json area_json(const WeightedSystem& system, const ContainmentArea& area) {
  nlohmann::json members = nlohmann::json::array();
  for (ProcessId v : area.members) members.push_back(system.name_of(v));
  const char* kind = area.kind == AreaKind::SB       ? "S_B"
                     : area.kind == AreaKind::SBStar ? "S_B_star"
                                                     : "radius";
  nlohmann::json j{{"kind", kind}, {"members", members}};
  if (area.kind == AreaKind::Radius) j["radius"] = area.radius;
  return j;
}

nlohmann::json disruption_report_json(const WeightedSystem& system, const DisruptionReport& rep) {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : rep.windows) {
    nlohmann::json changed = nlohmann::json::array();
    for (ProcessId v : w.changed) changed.push_back(system.name_of(v));
    windows.push_back({{"start", w.start}, {"end", w.end}, {"changed", changed}});
  }
  nlohmann::json per_process = nlohmann::json::object();
  for (const auto& [v, k] : rep.per_process_changes) per_process[system.name_of(v)] = k;
  return nlohmann::json{{"total", rep.total},
                        {"windows", windows},
                        {"per_process_changes", per_process},
                        {"legit_stable_indices", rep.legit_stable_indices},
                        {"unclosed_window", rep.unclosed_window},
                        {"unclosed_start", rep.unclosed_start}};
}

}  // namespace byzstab
