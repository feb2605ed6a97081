#include "byzstab/engine.hpp"

#include <algorithm>
#include <random>

namespace byzstab {

std::string strategy_name(const AdversaryStrategy& strategy) {
  struct Visitor {
    std::string operator()(const NoAdversary&) { return "none"; }
    std::string operator()(const MirrorRoot&) { return "mirror-root"; }
    std::string operator()(const BehaveCorrectly&) { return "behave-correctly"; }
    std::string operator()(const ResetRootState&) { return "reset-root-state"; }
    std::string operator()(const RandomWrites&) { return "random-writes"; }
    std::string operator()(const ScriptedWrites&) { return "scripted"; }
  };
  return std::visit(Visitor{}, strategy);
}

Configuration apply_step(const WeightedSystem& system, const Configuration& config,
                         const std::vector<ProcessId>& activated,
                         const std::vector<ByzWrite>& writes) {
  Configuration next = config;
  for (ProcessId v : activated) {
    if (system.is_byzantine(v))
      throw input_error("cannot activate Byzantine process " + system.name_of(v));
    next.at(v) = local_rule(system, config, v);  // reads the pre-step snapshot
  }
  for (const auto& w : writes) {
    if (!system.is_byzantine(w.target))
      throw input_error("adversary write targets correct process " + system.name_of(w.target));
    if (w.state.prnt &&
        (*w.state.prnt < 0 ||
         *w.state.prnt >= static_cast<int>(system.neighbors(w.target).size())))
      throw input_error("adversary write with invalid parent label");
    next.at(w.target) = w.state;
  }
  return next;
}

std::vector<ProcessId> enabled_processes(const WeightedSystem& system,
                                         const Configuration& config) {
  std::vector<ProcessId> out;
  for (ProcessId v = 0; v < system.size(); ++v)
    if (system.is_correct(v) && is_enabled(system, config, v)) out.push_back(v);
  return out;
}

bool quiescent(const WeightedSystem& system, const Configuration& config) {
  return enabled_processes(system, config).empty();
}

std::vector<ByzWrite> mirror_strategy_writes(const WeightedSystem& system,
                                             const Configuration& after_protocol,
                                             const std::vector<ProcessId>& activated,
                                             const MirrorRoot& mirror) {
  std::vector<ByzWrite> writes;
  ProcessId r = system.root();
  if (std::find(activated.begin(), activated.end(), r) == activated.end()) return writes;
  auto it = mirror.symmetry.find(r);
  if (it == mirror.symmetry.end()) throw input_error("mirror strategy without image for the root");
  ProcessId b = it->second;

  ProcessState st = after_protocol.at(r);
  if (st.prnt) {
    ProcessId parent = system.neighbor_at(r, *st.prnt);
    auto pit = mirror.symmetry.find(parent);
    if (pit == mirror.symmetry.end())
      throw input_error("mirror strategy without image for " + system.name_of(parent));
    auto label = system.label_of(b, pit->second);
    if (!label) throw input_error("mirror image is not a neighbor of " + system.name_of(b));
    st.prnt = *label;
  }
  writes.push_back({b, st});
  return writes;
}

namespace {

struct StrategyState {
  std::mt19937_64 rng;
};

std::vector<ByzWrite> strategy_writes(const WeightedSystem& system, const AdversaryStrategy& strategy,
                                      StrategyState& state, int step_index,
                                      const Configuration& before,
                                      const Configuration& after_protocol,
                                      const std::vector<ProcessId>& activated,
                                      const std::vector<ProcessId>& byz_scheduled) {
  struct Visitor {
    const WeightedSystem& system;
    StrategyState& state;
    int step_index;
    const Configuration& before;
    const Configuration& after_protocol;
    const std::vector<ProcessId>& activated;
    const std::vector<ProcessId>& byz_scheduled;

    std::vector<ByzWrite> operator()(const NoAdversary&) { return {}; }

    std::vector<ByzWrite> operator()(const MirrorRoot& m) {
      return mirror_strategy_writes(system, after_protocol, activated, m);
    }

    std::vector<ByzWrite> operator()(const BehaveCorrectly&) {
      std::vector<ByzWrite> writes;
      for (ProcessId b : byz_scheduled)
        writes.push_back({b, local_rule(system, before, b)});
      return writes;
    }

    std::vector<ByzWrite> operator()(const ResetRootState&) {
      std::vector<ByzWrite> writes;
      if (step_index != 1) return writes;
      for (ProcessId b : system.byzantine())
        writes.push_back({b, ProcessState{std::nullopt, system.metric().mr(), 0}});
      return writes;
    }

    std::vector<ByzWrite> operator()(const RandomWrites& rw) {
      std::vector<ByzWrite> writes;
      const auto& vals = system.metric().values();
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      for (ProcessId b : system.byzantine()) {
        if (coin(state.rng) >= rw.rate) continue;
        ProcessState st;
        int deg = static_cast<int>(system.neighbors(b).size());
        int p = std::uniform_int_distribution<int>(-1, deg - 1)(state.rng);
        st.prnt = p < 0 ? std::nullopt : std::optional<int>(p);
        st.level = vals[std::uniform_int_distribution<std::size_t>(0, vals.size() - 1)(state.rng)];
        st.dist = std::uniform_int_distribution<int>(0, system.size())(state.rng);
        writes.push_back({b, st});
      }
      return writes;
    }

    std::vector<ByzWrite> operator()(const ScriptedWrites& s) {
      auto it = s.at_step.find(step_index);
      return it == s.at_step.end() ? std::vector<ByzWrite>{} : it->second;
    }
  };
  return std::visit(
      Visitor{system, state, step_index, before, after_protocol, activated, byz_scheduled},
      strategy);
}

}  // namespace

ExecutionTrace run(const WeightedSystem& system, Configuration initial, const Schedule& schedule,
                   const AdversaryStrategy& strategy, const StopCondition& stop) {
  const int n = system.size();
  const int window = schedule.fairness_window > 0 ? schedule.fairness_window : 4 * n;
  const bool drive_byz =
      schedule.include_byzantine && std::holds_alternative<BehaveCorrectly>(strategy);

  ExecutionTrace trace;
  trace.initial = initial;
  trace.meta.daemon = schedule.daemon == DaemonKind::Central ? "central" : "distributed";
  trace.meta.strategy = strategy_name(strategy);
  trace.meta.schedule_seed = schedule.seed;
  trace.meta.strategy_seed = schedule.seed ^ 0x9e3779b97f4a7c15ull;
  trace.meta.fairness_window = window;

  std::mt19937_64 sched_rng(schedule.seed);
  StrategyState strat{std::mt19937_64(trace.meta.strategy_seed)};

  Configuration current = std::move(initial);
  std::vector<int> age(static_cast<std::size_t>(n), 0);

  // round bookkeeping: a round ends once every process enabled at its start has acted
  std::vector<bool> round_pending(static_cast<std::size_t>(n), false);
  auto reset_round = [&](const Configuration& cfg) {
    for (ProcessId v = 0; v < n; ++v)
      round_pending[static_cast<std::size_t>(v)] =
          system.is_correct(v) && is_enabled(system, cfg, v);
  };
  reset_round(current);

  auto pool_of = [&](const Configuration& cfg) {
    std::vector<ProcessId> pool = enabled_processes(system, cfg);
    if (drive_byz)
      for (ProcessId b : system.byzantine())
        if (is_enabled(system, cfg, b)) pool.push_back(b);
    std::sort(pool.begin(), pool.end());
    return pool;
  };

  auto done = [&](const Configuration& cfg) {
    switch (stop.kind) {
      case StopCondition::Kind::MaxSteps:
        return false;
      case StopCondition::Kind::Quiescence:
        return pool_of(cfg).empty();
      case StopCondition::Kind::Predicate:
        return stop.predicate(cfg);
    }
    return false;
  };

  for (int i = 1;; ++i) {
    if (done(current)) {
      trace.meta.stop_reached = true;
      break;
    }
    if (i > stop.max_steps) {
      trace.meta.budget_hit = stop.kind != StopCondition::Kind::MaxSteps;
      trace.meta.stop_reached = stop.kind == StopCondition::Kind::MaxSteps;
      break;
    }

    std::vector<ProcessId> pool = pool_of(current);
    std::vector<ProcessId> chosen;
    if (!pool.empty()) {
      std::vector<ProcessId> overdue;
      for (ProcessId v : pool)
        if (age[static_cast<std::size_t>(v)] >= window) overdue.push_back(v);
      if (schedule.daemon == DaemonKind::Central) {
        if (!overdue.empty()) {
          chosen.push_back(*std::max_element(
              overdue.begin(), overdue.end(), [&](ProcessId a, ProcessId b) {
                return age[static_cast<std::size_t>(a)] < age[static_cast<std::size_t>(b)];
              }));
        } else {
          chosen.push_back(pool[std::uniform_int_distribution<std::size_t>(
              0, pool.size() - 1)(sched_rng)]);
        }
      } else {
        std::uniform_int_distribution<int> coin(0, 1);
        for (ProcessId v : pool)
          if (age[static_cast<std::size_t>(v)] >= window || coin(sched_rng)) chosen.push_back(v);
        if (chosen.empty())
          chosen.push_back(pool[std::uniform_int_distribution<std::size_t>(
              0, pool.size() - 1)(sched_rng)]);
      }
    }

    std::vector<ProcessId> correct_chosen, byz_chosen;
    for (ProcessId v : chosen)
      (system.is_byzantine(v) ? byz_chosen : correct_chosen).push_back(v);

    Configuration after_protocol = apply_step(system, current, correct_chosen, {});
    std::vector<ByzWrite> writes = strategy_writes(system, strategy, strat, i, current,
                                                   after_protocol, correct_chosen, byz_chosen);
    Configuration next = after_protocol;
    for (const auto& w : writes) {
      if (!system.is_byzantine(w.target))
        throw input_error("adversary write targets correct process");
      next.at(w.target) = w.state;
    }

    for (ProcessId v = 0; v < n; ++v) {
      bool in_pool = std::binary_search(pool.begin(), pool.end(), v);
      auto& a = age[static_cast<std::size_t>(v)];
      a = (system.is_correct(v) && in_pool) ? a + 1 : 0;
    }
    for (ProcessId v : correct_chosen) age[static_cast<std::size_t>(v)] = 0;

    for (ProcessId v : correct_chosen) round_pending[static_cast<std::size_t>(v)] = false;
    if (std::none_of(round_pending.begin(), round_pending.end(), [](bool b) { return b; })) {
      ++trace.meta.rounds;
      reset_round(next);
    }

    trace.steps.push_back({correct_chosen, writes, next});
    current = next;
  }
  return trace;
}

}  // namespace byzstab
