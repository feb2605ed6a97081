#include "byzstab/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

#include "byzstab/trace_io.hpp"

namespace byzstab {

namespace {

struct ValueChain {
  std::vector<MetricValue> values;   // m_0 = mr, ..., m_len
  std::vector<EdgeWeight> weights;   // w_0, ..., w_{len-1}
};

// Depth-first search for a strictly decreasing met-chain of `edges` steps
// starting at mr. Deterministic: weights are tried in listed order.
std::optional<ValueChain> find_decreasing_chain(const RoutingMetric& metric, int edges) {
  ValueChain chain{{metric.mr()}, {}};
  std::set<std::pair<Rational, int>> dead;  // (value, remaining) with no completion

  std::function<bool(const MetricValue&, int)> dfs = [&](const MetricValue& m,
                                                         int remaining) -> bool {
    if (remaining == 0) return true;
    if (dead.count({m, remaining})) return false;
    for (const auto& w : metric.weights()) {
      MetricValue out = metric.met(m, w);
      if (!metric.less(out, m)) continue;
      chain.values.push_back(out);
      chain.weights.push_back(w);
      if (dfs(out, remaining - 1)) return true;
      chain.values.pop_back();
      chain.weights.pop_back();
    }
    dead.insert({m, remaining});
    return false;
  };
  if (!dfs(metric.mr(), edges)) return std::nullopt;
  return chain;
}

// Shortest met-chain from mr to target (values strictly decrease along it).
std::optional<ValueChain> shortest_chain_to(const RoutingMetric& metric,
                                            const MetricValue& target) {
  std::map<Rational, std::pair<Rational, EdgeWeight>> parent;  // value -> (prev, weight)
  std::deque<MetricValue> q{metric.mr()};
  std::set<Rational> seen{metric.mr()};
  while (!q.empty() && !seen.count(target)) {
    MetricValue m = q.front();
    q.pop_front();
    for (const auto& w : metric.weights()) {
      MetricValue out = metric.met(m, w);
      if (!seen.insert(out).second) continue;
      parent[out] = {m, w};
      q.push_back(out);
    }
  }
  if (!seen.count(target)) return std::nullopt;
  ValueChain chain;
  MetricValue cur = target;
  std::vector<MetricValue> rev_vals{cur};
  std::vector<EdgeWeight> rev_ws;
  while (cur != metric.mr()) {
    auto [prev, w] = parent.at(cur);
    rev_ws.push_back(w);
    cur = prev;
    rev_vals.push_back(cur);
  }
  chain.values.assign(rev_vals.rbegin(), rev_vals.rend());
  chain.weights.assign(rev_ws.rbegin(), rev_ws.rend());
  return chain;
}

struct ChainLayout {
  std::shared_ptr<const WeightedSystem> system;
  int c;
  std::vector<MetricValue> mu_r, mu_b;  // pinned oracle values per process
};

// Chain p_0=r,...,p_{2c+3}=b with the given per-edge weights (2c+3 entries).
ChainLayout make_chain_system(const MetricPtr& metric, int c,
                              const std::vector<EdgeWeight>& edge_weights) {
  const int n = 2 * c + 4;
  if (static_cast<int>(edge_weights.size()) != n - 1)
    throw input_error("chain scenario needs one weight per edge");
  GraphSpec spec;
  spec.metric = metric;
  spec.root = "r";
  spec.nodes.push_back("r");
  for (int i = 1; i <= 2 * c + 2; ++i) spec.nodes.push_back("p" + std::to_string(i));
  spec.nodes.push_back("b");
  spec.byzantine = {"b"};
  for (int i = 0; i < n - 1; ++i)
    spec.edges.emplace_back(spec.nodes[static_cast<std::size_t>(i)],
                            spec.nodes[static_cast<std::size_t>(i + 1)],
                            edge_weights[static_cast<std::size_t>(i)]);
  ChainLayout layout;
  layout.system = std::make_shared<WeightedSystem>(build_system(spec));
  layout.c = c;
  MuTable table = compute_mu_table(*layout.system);
  for (ProcessId v = 0; v < n; ++v) {
    layout.mu_r.push_back(table.at(v, 0));
    layout.mu_b.push_back(table.at(v, n - 1));
  }
  return layout;
}

void verify_chain_properties(const ChainLayout& L) {
  const WeightedSystem& s = *L.system;
  const RoutingMetric& metric = s.metric();
  const int c = L.c;
  const int b = s.size() - 1;
  for (int i = 1; i <= c + 1; ++i)
    if (L.mu_r[static_cast<std::size_t>(i)] != L.mu_b[static_cast<std::size_t>(b - i)])
      throw inapplicable_error("chain build lost the mu symmetry at p" + std::to_string(i));
  if (!metric.less(L.mu_b[static_cast<std::size_t>(c + 1)],
                   L.mu_r[static_cast<std::size_t>(c + 1)]) ||
      !metric.less(L.mu_r[static_cast<std::size_t>(c + 2)],
                   L.mu_b[static_cast<std::size_t>(c + 2)]))
    throw inapplicable_error("chain build lost the center-edge property");
}

bool state_matches(const ProcessState& st, const std::optional<int>& prnt,
                   const MetricValue& level) {
  return st.prnt == prnt && st.level == level;
}

// Quiescence of every correct process, plus the Byzantine ones when the
// phase drives them through the protocol.
bool settled(const WeightedSystem& s, const Configuration& cfg, bool include_byz) {
  for (ProcessId v = 0; v < s.size(); ++v) {
    if (s.is_byzantine(v) && !include_byz) continue;
    if (is_enabled(s, cfg, v)) return false;
  }
  return true;
}

Scenario make_chain_scenario(std::string name, ChainLayout layout, std::uint64_t seed) {
  const auto system = layout.system;
  const WeightedSystem& s = *system;
  const RoutingMetric& metric = s.metric();
  const int n = s.size();
  const int c = layout.c;
  const ProcessId b = n - 1;

  Scenario sc;
  sc.name = std::move(name);
  sc.system = system;
  sc.area = compute_area(s, AreaKind::Radius, c);
  for (ProcessId i = 0; i < n; ++i) sc.symmetry[i] = b - i;

  sc.initial = random_configuration(s, seed);
  sc.initial.at(0) = ProcessState{std::nullopt, metric.mr(), 0};
  sc.initial.at(b) = ProcessState{std::nullopt, metric.mr(), 0};

  auto left_label = [&s](ProcessId i) { return *s.label_of(i, i - 1); };
  auto right_label = [&s](ProcessId i) { return *s.label_of(i, i + 1); };

  auto mu_r = layout.mu_r;
  auto mu_b = layout.mu_b;

  // split configuration: both halves hang off their nearer pinned root
  auto rho1 = [&s, mu_r, mu_b, b, left_label, right_label, &metric](const Configuration& cfg) {
    if (!state_matches(cfg.at(0), std::nullopt, metric.mr())) return false;
    if (!state_matches(cfg.at(b), std::nullopt, metric.mr())) return false;
    for (ProcessId i = 1; i < b; ++i) {
      const auto& want_r = mu_r[static_cast<std::size_t>(i)];
      const auto& want_b = mu_b[static_cast<std::size_t>(i)];
      if (metric.less(want_b, want_r)) {
        if (!state_matches(cfg.at(i), left_label(i), want_r)) return false;
      } else if (metric.less(want_r, want_b)) {
        if (!state_matches(cfg.at(i), right_label(i), want_b)) return false;
      } else {
        if (cfg.at(i).level != want_r) return false;
      }
    }
    return settled(s, cfg, false);
  };

  // single tree rooted at r, the Byzantine end included
  auto rho2 = [&s, mu_r, b, left_label, &metric](const Configuration& cfg) {
    if (!state_matches(cfg.at(0), std::nullopt, metric.mr())) return false;
    for (ProcessId i = 1; i <= b; ++i)
      if (!state_matches(cfg.at(i), left_label(i), mu_r[static_cast<std::size_t>(i)]))
        return false;
    return settled(s, cfg, true);
  };

  auto rho3 = [&s, b, &metric](const Configuration& cfg) {
    return state_matches(cfg.at(b), std::nullopt, metric.mr());
  };

  sc.entry = {"mirror-to-rho1", MirrorRoot{sc.symmetry}, false, rho1, "split trees rho_1"};
  sc.cycle = {
      {"behave-to-rho2", BehaveCorrectly{}, true, rho2, "single tree rho_2"},
      {"reset-to-rho3", ResetRootState{}, false, rho3, "Byzantine reset rho_3"},
      {"mirror-to-rho1", MirrorRoot{sc.symmetry}, false, rho1, "split trees rho_1"},
  };
  return sc;
}

}  // namespace

namespace {

void require_maximizable(const RoutingMetric& metric) {
  if (!metric.maximizable())
    throw inapplicable_error("metric " + metric.name() +
                             " is not maximizable (bounded and monotonic)");
}

}  // namespace

Scenario build_theorem5_case1(const MetricPtr& metric, int c, std::uint64_t seed) {
  if (c < 0) throw input_error("containment radius c must be >= 0");
  require_maximizable(*metric);
  auto chain = find_decreasing_chain(*metric, c + 2);
  if (!chain)
    throw inapplicable_error("no realizable value chain: the metric has no " +
                             std::to_string(c + 3) +
                             " distinct chained values (c >= |M|-2 boundary)");
  // left edges w_0..w_{c+1}, right edges mirror w_0..w_c
  std::vector<EdgeWeight> edges(static_cast<std::size_t>(2 * c + 3), Rational(0));
  for (int i = 0; i <= c + 1; ++i) edges[static_cast<std::size_t>(i)] = chain->weights[static_cast<std::size_t>(i)];
  for (int i = 0; i <= c; ++i)
    edges[static_cast<std::size_t>(2 * c + 2 - i)] = chain->weights[static_cast<std::size_t>(i)];
  ChainLayout layout = make_chain_system(metric, c, edges);
  verify_chain_properties(layout);
  return make_chain_scenario("theorem5-case1", std::move(layout), seed);
}

Scenario build_theorem5_case2(const MetricPtr& metric, int c, std::uint64_t seed) {
  if (c < 0) throw input_error("containment radius c must be >= 0");
  require_maximizable(*metric);
  const RoutingMetric& m = *metric;

  // a value that some weight preserves and another strictly lowers,
  // scanned from mr downward
  std::vector<MetricValue> ordered = m.values();
  std::sort(ordered.begin(), ordered.end(),
            [&m](const MetricValue& a, const MetricValue& b) { return m.less(b, a); });
  std::optional<MetricValue> found_m;
  std::optional<EdgeWeight> w_keep, w_dec;
  std::optional<ValueChain> chain;
  for (const auto& cand : ordered) {
    auto reach = shortest_chain_to(m, cand);
    if (!reach) continue;
    std::optional<EdgeWeight> keep, dec;
    for (const auto& w : m.weights()) {
      MetricValue out = m.met(cand, w);
      if (out == cand && !keep) keep = w;
      if (m.less(out, cand) && !dec) dec = w;
    }
    if (keep && dec) {
      found_m = cand;
      w_keep = keep;
      w_dec = dec;
      chain = reach;
      break;
    }
  }
  if (!found_m)
    throw inapplicable_error(
        "metric is strictly decreasing: no value is both preserved and lowered");

  const int k = static_cast<int>(chain->weights.size());
  if (k >= c + 2) {
    // the reachability chain already gives c+3 strictly decreasing values
    std::vector<EdgeWeight> edges(static_cast<std::size_t>(2 * c + 3), Rational(0));
    for (int i = 0; i <= c + 1; ++i)
      edges[static_cast<std::size_t>(i)] = chain->weights[static_cast<std::size_t>(i)];
    for (int i = 0; i <= c; ++i)
      edges[static_cast<std::size_t>(2 * c + 2 - i)] = chain->weights[static_cast<std::size_t>(i)];
    ChainLayout layout = make_chain_system(metric, c, edges);
    verify_chain_properties(layout);
    return make_chain_scenario("theorem5-case2", std::move(layout), seed);
  }

  // S_1: chain to m, filler edges preserving m, the lowering weight at the center
  std::vector<EdgeWeight> edges(static_cast<std::size_t>(2 * c + 3), *w_keep);
  for (int i = 0; i < k; ++i) {
    edges[static_cast<std::size_t>(i)] = chain->weights[static_cast<std::size_t>(i)];
    edges[static_cast<std::size_t>(2 * c + 2 - i)] = chain->weights[static_cast<std::size_t>(i)];
  }
  edges[static_cast<std::size_t>(c + 1)] = *w_dec;
  ChainLayout layout = make_chain_system(metric, c, edges);
  verify_chain_properties(layout);
  return make_chain_scenario("theorem5-case2", std::move(layout), seed);
}

Scenario build_theorem5_case3(const MetricPtr& metric, int c, std::uint64_t seed) {
  if (c < 0) throw input_error("containment radius c must be >= 0");
  require_maximizable(*metric);
  const auto& props = metric->properties();
  if (!props.strictly_decreasing)
    throw inapplicable_error("case 3 needs a strictly decreasing metric");
  if (props.fixed_points.size() == 1)
    throw inapplicable_error(
        "metric has exactly one fixed point: no construction exists (strongly maximizable)");

  if (props.fixed_points.empty()) {
    // no fixed point: the value set cannot be finite, so the chain shape applies
    Scenario sc = build_theorem5_case1(metric, c, seed);
    sc.name = "theorem5-case3";
    return sc;
  }

  // two or more fixed points: both must be meetable from mr
  const RoutingMetric& m = *metric;
  std::vector<MetricValue> fps = props.fixed_points;
  std::sort(fps.begin(), fps.end(),
            [&m](const MetricValue& a, const MetricValue& b) { return m.less(a, b); });
  MetricValue lower = fps.front(), upper = fps.back();
  auto chain_lo = shortest_chain_to(m, lower);
  auto chain_hi = shortest_chain_to(m, upper);
  if (!chain_lo)
    throw inapplicable_error(
        "fixed point " + m.display_value(lower) +
        " is unreachable from mr: with a bounded monotonic metric every met-image of a value "
        "above a fixed point stays above it, so no chain to the lower fixed point exists and "
        "the two-fixed-point construction cannot be realized");
  if (!chain_hi)
    throw inapplicable_error("fixed point " + m.display_value(upper) + " is unreachable from mr");

  const int k = static_cast<int>(chain_lo->weights.size());
  const int kp = static_cast<int>(chain_hi->weights.size());
  if (k >= c + 2 || kp >= c + 2) {
    const ValueChain& longer = k >= c + 2 ? *chain_lo : *chain_hi;
    std::vector<EdgeWeight> edges(static_cast<std::size_t>(2 * c + 3), Rational(0));
    for (int i = 0; i <= c + 1; ++i)
      edges[static_cast<std::size_t>(i)] = longer.weights[static_cast<std::size_t>(i)];
    for (int i = 0; i <= c; ++i)
      edges[static_cast<std::size_t>(2 * c + 2 - i)] = longer.weights[static_cast<std::size_t>(i)];
    ChainLayout layout = make_chain_system(metric, c, edges);
    verify_chain_properties(layout);
    return make_chain_scenario("theorem5-case3", std::move(layout), seed);
  }

  // S_2: r side realizes the lower fixed point, b side the upper, filler between
  EdgeWeight filler = m.weights().front();
  std::vector<EdgeWeight> edges(static_cast<std::size_t>(2 * c + 3), filler);
  for (int i = 0; i < k; ++i) edges[static_cast<std::size_t>(i)] = chain_lo->weights[static_cast<std::size_t>(i)];
  for (int i = 0; i < kp; ++i)
    edges[static_cast<std::size_t>(2 * c + 2 - i)] = chain_hi->weights[static_cast<std::size_t>(i)];
  ChainLayout layout = make_chain_system(metric, c, edges);

  // the proof's property for this shape: both center processes sit strictly
  // between the fixed points
  if (!(layout.mu_r[static_cast<std::size_t>(c + 1)] == lower &&
        layout.mu_b[static_cast<std::size_t>(c + 1)] == upper &&
        layout.mu_r[static_cast<std::size_t>(c + 2)] == lower &&
        layout.mu_b[static_cast<std::size_t>(c + 2)] == upper))
    throw inapplicable_error("two-fixed-point build lost the Upsilon properties");
  Scenario sc = make_chain_scenario("theorem5-case3", std::move(layout), seed);
  return sc;
}

Scenario build_theorem6_gadget(const MetricPtr& metric, GadgetArea area, std::uint64_t seed) {
  require_maximizable(*metric);
  const RoutingMetric& m = *metric;

  std::optional<EdgeWeight> w, wp;
  std::optional<MetricValue> mval;
  for (const auto& cand_w : m.weights()) {
    MetricValue img = m.met(m.mr(), cand_w);
    if (!m.less(img, m.mr())) continue;
    for (const auto& cand_wp : m.weights()) {
      if (m.less(m.met(img, cand_wp), img)) {
        w = cand_w;
        wp = cand_wp;
        mval = img;
        break;
      }
    }
    if (w) break;
  }
  if (!w)
    throw inapplicable_error(
        "no qualifying weights: every met(mr,.) image is preserved, so S_B* is empty on "
        "every such system and no candidate area can sit strictly inside it");

  GraphSpec spec;
  spec.metric = metric;
  spec.root = "r";
  spec.nodes = {"r", "u", "u'", "v", "v'", "b"};
  spec.byzantine = {"b"};
  spec.edges = {{"r", "u", *w},   {"r", "u'", *w},  {"u", "v", *wp},
                {"u'", "v'", *wp}, {"v", "b", *w},   {"v'", "b", *w}};
  auto system = std::make_shared<WeightedSystem>(build_system(spec));
  const WeightedSystem& s = *system;

  const ProcessId R = 0, U = 1, U2 = 2, V = 3, V2 = 4, B = 5;

  ContainmentArea sbstar = compute_area(s, AreaKind::SBStar);
  if (sbstar.members != std::vector<ProcessId>{V, V2})
    throw inapplicable_error("gadget build did not produce S_B* = {v, v'}");

  Scenario sc;
  sc.name = "theorem6";
  sc.system = system;
  sc.symmetry = {{R, B}, {B, R}, {U, V}, {V, U}, {U2, V2}, {V2, U2}};
  sc.area.kind = AreaKind::SBStar;
  if (area == GadgetArea::V) sc.area.members = {V};
  if (area == GadgetArea::VPrime) sc.area.members = {V2};

  sc.initial = random_configuration(s, seed);
  sc.initial.at(R) = ProcessState{std::nullopt, m.mr(), 0};
  sc.initial.at(B) = ProcessState{std::nullopt, m.mr(), 0};

  MetricValue lvl_m = *mval;
  MetricValue lvl_mp = m.met(lvl_m, *wp);
  MetricValue lvl_mpp = m.met(lvl_mp, *w);

  auto lbl = [&s](ProcessId from, ProcessId to) { return *s.label_of(from, to); };

  auto rho1 = [=, &s](const Configuration& cfg) {
    const RoutingMetric& metric = s.metric();
    return state_matches(cfg.at(R), std::nullopt, metric.mr()) &&
           state_matches(cfg.at(B), std::nullopt, metric.mr()) &&
           state_matches(cfg.at(U), lbl(U, R), lvl_m) &&
           state_matches(cfg.at(U2), lbl(U2, R), lvl_m) &&
           state_matches(cfg.at(V), lbl(V, B), lvl_m) &&
           state_matches(cfg.at(V2), lbl(V2, B), lvl_m) && settled(s, cfg, false);
  };
  auto rho2 = [=, &s](const Configuration& cfg) {
    const RoutingMetric& metric = s.metric();
    return state_matches(cfg.at(R), std::nullopt, metric.mr()) &&
           state_matches(cfg.at(U), lbl(U, R), lvl_m) &&
           state_matches(cfg.at(U2), lbl(U2, R), lvl_m) &&
           state_matches(cfg.at(V), lbl(V, U), lvl_mp) &&
           state_matches(cfg.at(V2), lbl(V2, U2), lvl_mp) &&
           (cfg.at(B).prnt == std::optional<int>(lbl(B, V)) ||
            cfg.at(B).prnt == std::optional<int>(lbl(B, V2))) &&
           cfg.at(B).level == lvl_mpp && settled(s, cfg, true);
  };
  auto rho3 = [=, &s](const Configuration& cfg) {
    return state_matches(cfg.at(B), std::nullopt, s.metric().mr());
  };

  sc.entry = {"mirror-to-rho1", MirrorRoot{sc.symmetry}, false, rho1, "split trees rho_1"};
  sc.cycle = {
      {"behave-to-rho2", BehaveCorrectly{}, true, rho2, "single tree rho_2"},
      {"reset-to-rho3", ResetRootState{}, false, rho3, "Byzantine reset rho_3"},
      {"mirror-to-rho1", MirrorRoot{sc.symmetry}, false, rho1, "split trees rho_1"},
  };
  return sc;
}

int phase_budget(const Scenario& scenario) {
  if (scenario.per_phase_budget > 0) return scenario.per_phase_budget;
  if (const char* env = std::getenv("BYZSTAB_BUDGET")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 50 * scenario.system->size();
}

CycleRunResult run_cycles(const Scenario& scenario, int cycles) {
  if (cycles < 1) throw input_error("cycle count must be >= 1");
  const WeightedSystem& s = *scenario.system;
  const int budget = phase_budget(scenario);

  CycleRunResult result;
  result.trace.initial = scenario.initial;
  result.trace.meta.daemon = "central";
  result.trace.meta.strategy = "scripted-cycle";

  Configuration current = scenario.initial;
  std::uint64_t phase_seed = 0x5eedULL;

  auto run_phase = [&](const ScenarioPhase& phase, int cycle_index) {
    Schedule sched;
    sched.daemon = DaemonKind::Central;
    sched.seed = phase_seed++;
    sched.include_byzantine = phase.include_byzantine;
    ExecutionTrace part = run(s, current, sched, phase.strategy,
                              StopCondition::when(phase.waypoint, budget));
    for (auto& step : part.steps) result.trace.steps.push_back(std::move(step));
    current = result.trace.steps.empty() ? scenario.initial : result.trace.steps.back().after;
    if (!part.meta.stop_reached) {
      std::string diag = "waypoint not reached within " + std::to_string(budget) +
                         " steps: " + phase.waypoint_desc + " (cycle " +
                         std::to_string(cycle_index) + ", phase " + phase.name + "); state:";
      for (ProcessId v = 0; v < s.size(); ++v) {
        const auto& st = current.at(v);
        diag += " " + s.name_of(v) + "=(" +
                (st.prnt ? s.name_of(s.neighbor_at(v, *st.prnt)) : "bot") + "," +
                s.metric().display_value(st.level) + ")";
      }
      throw budget_error(diag);
    }
    result.trace.meta.rounds += part.meta.rounds;
  };

  run_phase(scenario.entry, 0);
  for (int k = 1; k <= cycles; ++k) {
    for (const auto& phase : scenario.cycle) run_phase(phase, k);
    result.cycles_completed = k;
  }
  result.report = count_disruptions(s, result.trace, scenario.area);
  return result;
}

}  // namespace byzstab
