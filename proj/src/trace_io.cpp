#include "byzstab/trace_io.hpp"

#include <ostream>

namespace byzstab {

using nlohmann::json;

json state_json(const WeightedSystem& system, ProcessId v, const ProcessState& st) {
  json j;
  if (st.prnt)
    j["prnt"] = system.name_of(system.neighbor_at(v, *st.prnt));
  else
    j["prnt"] = nullptr;
  j["level"] = system.metric().display_value(st.level);
  j["dist"] = st.dist;
  return j;
}

json snapshot_json(const WeightedSystem& system, const Configuration& config) {
  json j = json::object();
  for (ProcessId v = 0; v < system.size(); ++v)
    j[system.name_of(v)] = state_json(system, v, config.at(v));
  return j;
}

void write_trace_jsonl(std::ostream& os, const WeightedSystem& system,
                       const ExecutionTrace& trace, int snapshot_every) {
  json header{{"type", "header"},
              {"schema_version", 1},
              {"n", system.size()},
              {"metric", system.metric().name()},
              {"daemon", trace.meta.daemon},
              {"strategy", trace.meta.strategy},
              {"schedule_seed", trace.meta.schedule_seed},
              {"strategy_seed", trace.meta.strategy_seed},
              {"fairness_window", trace.meta.fairness_window},
              {"rounds", trace.meta.rounds},
              {"budget_hit", trace.meta.budget_hit},
              {"steps", trace.length()}};
  os << header.dump() << "\n";
  os << json{{"type", "snapshot"}, {"i", 0}, {"states", snapshot_json(system, trace.initial)}}
            .dump()
     << "\n";

  for (int i = 1; i <= trace.length(); ++i) {
    const TraceStep& step = trace.steps[static_cast<std::size_t>(i - 1)];
    json activated = json::array();
    for (ProcessId v : step.activated) activated.push_back(system.name_of(v));
    json writes = json::object();
    for (const auto& w : step.writes)
      writes[system.name_of(w.target)] = state_json(system, w.target, w.state);
    json changed = json::object();
    const Configuration& prev = trace.config_at(i - 1);
    for (ProcessId v = 0; v < system.size(); ++v)
      if (prev.at(v) != step.after.at(v))
        changed[system.name_of(v)] = state_json(system, v, step.after.at(v));
    os << json{{"type", "step"},
               {"i", i},
               {"activated", activated},
               {"byz_writes", writes},
               {"changed", changed}}
              .dump()
       << "\n";
    if (snapshot_every > 0 && (i % snapshot_every == 0 || i == trace.length()))
      os << json{{"type", "snapshot"}, {"i", i}, {"states", snapshot_json(system, step.after)}}
                .dump()
         << "\n";
  }
}

}  // namespace byzstab
