#include "byzstab/maximizable.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "byzstab/oracle.hpp"

namespace byzstab {

namespace {

struct Edge {
  ProcessId a, b;
  EdgeWeight w;
};

std::vector<Edge> edge_list(const WeightedSystem& system) {
  std::vector<Edge> edges;
  for (ProcessId v = 0; v < system.size(); ++v)
    for (const auto& nb : system.neighbors(v))
      if (nb.id > v) edges.push_back({v, nb.id, nb.weight});
  return edges;
}

// Tree-path metric per node for an edge subset already known to be a spanning tree.
std::vector<MetricValue> tree_values(const WeightedSystem& system, const std::vector<Edge>& tree) {
  const RoutingMetric& metric = system.metric();
  std::vector<std::vector<std::pair<ProcessId, EdgeWeight>>> adj(
      static_cast<std::size_t>(system.size()));
  for (const auto& e : tree) {
    adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.w});
    adj[static_cast<std::size_t>(e.b)].push_back({e.a, e.w});
  }
  std::vector<MetricValue> val(static_cast<std::size_t>(system.size()), metric.mr());
  std::vector<bool> seen(static_cast<std::size_t>(system.size()), false);
  std::deque<ProcessId> q{system.root()};
  seen[static_cast<std::size_t>(system.root())] = true;
  while (!q.empty()) {
    ProcessId x = q.front();
    q.pop_front();
    for (const auto& [y, w] : adj[static_cast<std::size_t>(x)])
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        val[static_cast<std::size_t>(y)] = metric.met(val[static_cast<std::size_t>(x)], w);
        q.push_back(y);
      }
  }
  return val;
}

bool spans(const WeightedSystem& system, const std::vector<Edge>& tree) {
  std::vector<std::vector<ProcessId>> adj(static_cast<std::size_t>(system.size()));
  for (const auto& e : tree) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(system.size()), false);
  std::deque<ProcessId> q{0};
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    ProcessId x = q.front();
    q.pop_front();
    for (ProcessId y : adj[static_cast<std::size_t>(x)])
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++count;
        q.push_back(y);
      }
  }
  return count == system.size();
}

}  // namespace

bool max_metric_tree_exists(const WeightedSystem& system) {
  const int n = system.size();
  if (n > 8) throw budget_error("spanning tree enumeration limited to n <= 8");
  if (n == 1) return true;

  std::vector<MetricValue> want;
  for (ProcessId v = 0; v < n; ++v)
    want.push_back(mu_brute_force(system, v, system.root(), system.metric().mr()));

  std::vector<Edge> edges = edge_list(system);
  const int m = static_cast<int>(edges.size());
  const int k = n - 1;

  // enumerate all k-subsets of edges
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  long combos = 0;
  while (true) {
    if (++combos > 5'000'000) throw budget_error("spanning tree enumeration budget exceeded");
    std::vector<Edge> tree;
    tree.reserve(static_cast<std::size_t>(k));
    for (int i : pick) tree.push_back(edges[static_cast<std::size_t>(i)]);
    if (spans(system, tree)) {
      std::vector<MetricValue> got = tree_values(system, tree);
      bool ok = true;
      for (ProcessId v = 0; v < n && ok; ++v)
        ok = got[static_cast<std::size_t>(v)] == want[static_cast<std::size_t>(v)];
      if (ok) return true;
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return false;
}

namespace {

// Shortest met-chains from mr: value -> (weights of one shortest chain).
std::map<Rational, std::vector<EdgeWeight>> shortest_chains(const RoutingMetric& metric) {
  std::map<Rational, std::vector<EdgeWeight>> chain;
  chain[metric.mr()] = {};
  std::deque<MetricValue> q{metric.mr()};
  while (!q.empty()) {
    MetricValue m = q.front();
    q.pop_front();
    for (const auto& w : metric.weights()) {
      MetricValue out = metric.met(m, w);
      if (chain.count(out)) continue;
      auto c = chain[m];
      c.push_back(w);
      chain[out] = std::move(c);
      q.push_back(out);
    }
  }
  return chain;
}

GraphSpec base_spec(const MetricPtr& metric) {
  GraphSpec spec;
  spec.metric = metric;
  spec.root = "r";
  spec.nodes.push_back("r");
  return spec;
}

std::string add_node(GraphSpec& spec) {
  std::string name = "p" + std::to_string(spec.nodes.size());
  spec.nodes.push_back(name);
  return name;
}

std::string add_chain(GraphSpec& spec, const std::vector<EdgeWeight>& weights) {
  std::string prev = "r";
  for (const auto& w : weights) {
    std::string next = add_node(spec);
    spec.edges.emplace_back(prev, next, w);
    prev = next;
  }
  return prev;
}

// Two disjoint chains realizing m, joined by the weight that improves m.
std::optional<WeightedSystem> twin_chain_gadget(const MetricPtr& metric,
                                                const std::vector<EdgeWeight>& chain,
                                                const EdgeWeight& w, int max_nodes) {
  if (chain.empty()) return std::nullopt;  // the violation sits at mr itself: unrealizable
  int nodes = 1 + 2 * static_cast<int>(chain.size());
  if (nodes > max_nodes) return std::nullopt;
  GraphSpec spec = base_spec(metric);
  std::string u = add_chain(spec, chain);
  std::string u2 = add_chain(spec, chain);
  spec.edges.emplace_back(u, u2, w);
  return build_system(spec);
}

// Shortest met-chain from mr to target with at least min_len steps.
std::optional<std::vector<EdgeWeight>> find_chain(const RoutingMetric& metric,
                                                  const MetricValue& target, std::size_t min_len,
                                                  std::size_t max_len) {
  std::set<std::pair<Rational, std::size_t>> seen;
  std::deque<std::pair<MetricValue, std::vector<EdgeWeight>>> q{{metric.mr(), {}}};
  seen.insert({metric.mr(), 0});
  while (!q.empty()) {
    auto [val, chain] = q.front();
    q.pop_front();
    if (val == target && chain.size() >= min_len) return chain;
    if (chain.size() >= max_len) continue;
    for (const auto& w : metric.weights()) {
      MetricValue out = metric.met(val, w);
      if (!seen.insert({out, chain.size() + 1}).second) continue;
      auto c = chain;
      c.push_back(w);
      q.push_back({out, std::move(c)});
    }
  }
  return std::nullopt;
}

// Chains realizing m and m2 meeting at one node, plus a pendant through the
// weight whose images flip the order of m and m2. When both chains would be a
// single edge (the junction would need two parallel root edges) the m-side is
// rerouted through a longer chain if one exists.
std::optional<WeightedSystem> flip_gadget(const MetricPtr& metric, const MetricValue& m,
                                          const MetricValue& m2, const EdgeWeight& w,
                                          int max_nodes) {
  const auto cap = static_cast<std::size_t>(max_nodes);
  auto chain_m_opt = find_chain(*metric, m, 1, cap);
  auto chain_m2_opt = find_chain(*metric, m2, 1, cap);
  if (!chain_m_opt || !chain_m2_opt) return std::nullopt;
  std::vector<EdgeWeight> chain_m = std::move(*chain_m_opt);
  const std::vector<EdgeWeight>& chain_m2 = *chain_m2_opt;
  if (chain_m.size() == 1 && chain_m2.size() == 1) {
    auto longer = find_chain(*metric, m, 2, cap);
    if (!longer) return std::nullopt;
    chain_m = std::move(*longer);
  }
  int nodes = static_cast<int>(chain_m.size() + chain_m2.size()) + 1;
  if (nodes > max_nodes) return std::nullopt;
  GraphSpec spec = base_spec(metric);
  // one chain ends at u; the other is built one edge short and joined to u
  std::string u = add_chain(spec, chain_m2);
  std::string prev = "r";
  for (std::size_t i = 0; i + 1 < chain_m.size(); ++i) {
    std::string next = add_node(spec);
    spec.edges.emplace_back(prev, next, chain_m[i]);
    prev = next;
  }
  spec.edges.emplace_back(prev, u, chain_m.back());
  std::string v = add_node(spec);
  spec.edges.emplace_back(u, v, w);
  return build_system(spec);
}

std::vector<WeightedSystem> violation_gadgets(const MetricPtr& metric, int max_nodes) {
  std::vector<WeightedSystem> out;
  const RoutingMetric& m = *metric;
  auto chains = shortest_chains(m);

  for (const auto& [val, chain] : chains) {
    for (const auto& w : m.weights()) {
      MetricValue img = m.met(val, w);
      if (m.less(val, img)) {  // boundedness violation at a reachable value
        auto g = twin_chain_gadget(metric, chain, w, max_nodes);
        if (g) out.push_back(std::move(*g));
      }
    }
  }
  for (const auto& [a, chain_a] : chains) {
    for (const auto& [b, chain_b] : chains) {
      if (!m.less(Rational(a), Rational(b))) continue;
      for (const auto& w : m.weights()) {
        if (!m.less(m.met(Rational(b), w), m.met(Rational(a), w))) continue;
        auto g = flip_gadget(metric, Rational(a), Rational(b), w, max_nodes);
        if (g) out.push_back(std::move(*g));
      }
    }
  }
  return out;
}

}  // namespace

int violation_gadget_count(const MetricPtr& metric, int max_nodes) {
  return static_cast<int>(violation_gadgets(metric, max_nodes).size());
}

MaximizableVerdict brute_force_maximizable(const MetricPtr& metric, int max_nodes, int trials,
                                           std::uint64_t seed) {
  if (max_nodes > 8) throw input_error("brute_force_maximizable limited to max_nodes <= 8");
  if (max_nodes < 2) throw input_error("need max_nodes >= 2");
  MaximizableVerdict verdict;

  std::vector<WeightedSystem> structured = violation_gadgets(metric, max_nodes);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    WeightedSystem system =
        static_cast<std::size_t>(t) < structured.size()
            ? structured[static_cast<std::size_t>(t)]
            : random_system(metric,
                            std::uniform_int_distribution<int>(2, max_nodes)(rng), rng(), 0.35, 0);
    ++verdict.trials_run;
    if (!max_metric_tree_exists(system)) {
      verdict.maximizable = false;
      verdict.counterexample = std::move(system);
      return verdict;
    }
  }
  return verdict;
}

}  // namespace byzstab
