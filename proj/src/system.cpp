#include "byzstab/system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace byzstab {

std::optional<ProcessId> WeightedSystem::id_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<ProcessId>(i);
  return std::nullopt;
}

std::vector<ProcessId> WeightedSystem::designated_roots() const {
  std::vector<ProcessId> roots{root_};
  roots.insert(roots.end(), byzantine_.begin(), byzantine_.end());
  return roots;
}

std::optional<int> WeightedSystem::label_of(ProcessId v, ProcessId u) const {
  const auto& nb = adj_[static_cast<std::size_t>(v)];
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (nb[i].id == u) return static_cast<int>(i);
  return std::nullopt;
}

int WeightedSystem::distance(ProcessId u, ProcessId v) const {
  if (u == v) return 0;
  std::vector<int> dist(static_cast<std::size_t>(size()), -1);
  std::deque<ProcessId> q{u};
  dist[static_cast<std::size_t>(u)] = 0;
  while (!q.empty()) {
    ProcessId x = q.front();
    q.pop_front();
    for (const auto& nb : neighbors(x)) {
      if (dist[static_cast<std::size_t>(nb.id)] >= 0) continue;
      dist[static_cast<std::size_t>(nb.id)] = dist[static_cast<std::size_t>(x)] + 1;
      if (nb.id == v) return dist[static_cast<std::size_t>(nb.id)];
      q.push_back(nb.id);
    }
  }
  return -1;  // unreachable; build_system guarantees connectivity
}

WeightedSystem build_system(const GraphSpec& spec) {
  if (!spec.metric) throw input_error("system needs a metric");
  if (spec.nodes.empty()) throw input_error("system needs at least one process");

  std::set<std::string> seen;
  for (const auto& n : spec.nodes)
    if (!seen.insert(n).second) throw input_error("duplicate process name: " + n);

  // root gets id 0, remaining processes keep their listed order
  std::vector<std::string> names;
  names.push_back(spec.root);
  for (const auto& n : spec.nodes)
    if (n != spec.root) names.push_back(n);
  if (names.size() != spec.nodes.size())
    throw input_error("root " + spec.root + " is not a listed process");

  auto index_of = [&names](const std::string& n) -> int {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw input_error("unknown process in edge/byzantine list: " + n);
  };

  WeightedSystem s;
  s.metric_ = spec.metric;
  s.names_ = names;
  s.root_ = 0;
  s.byz_mask_.assign(names.size(), false);
  for (const auto& b : spec.byzantine) {
    int id = index_of(b);
    if (id == s.root_) throw input_error("the root process cannot be Byzantine");
    if (!s.byz_mask_[static_cast<std::size_t>(id)]) {
      s.byz_mask_[static_cast<std::size_t>(id)] = true;
      s.byzantine_.push_back(id);
    }
  }
  std::sort(s.byzantine_.begin(), s.byzantine_.end());

  s.adj_.assign(names.size(), {});
  std::set<std::pair<int, int>> edge_set;
  for (const auto& [a, b, w] : spec.edges) {
    int ia = index_of(a), ib = index_of(b);
    if (ia == ib) throw input_error("self-loop on " + a);
    auto key = std::minmax(ia, ib);
    if (!edge_set.insert({key.first, key.second}).second)
      throw input_error("duplicate edge " + a + "-" + b);
    if (!spec.metric->weight_in_domain(w))
      throw input_error("edge weight " + w.str() + " outside W for metric " + spec.metric->name());
    s.adj_[static_cast<std::size_t>(ia)].push_back({ib, w});
    s.adj_[static_cast<std::size_t>(ib)].push_back({ia, w});
  }
  s.edge_count_ = static_cast<int>(edge_set.size());
  for (auto& nb : s.adj_)
    std::sort(nb.begin(), nb.end(), [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });

  // connectivity
  if (s.size() > 1) {
    std::vector<bool> vis(static_cast<std::size_t>(s.size()), false);
    std::deque<ProcessId> q{0};
    vis[0] = true;
    int count = 1;
    while (!q.empty()) {
      ProcessId x = q.front();
      q.pop_front();
      for (const auto& nb : s.neighbors(x))
        if (!vis[static_cast<std::size_t>(nb.id)]) {
          vis[static_cast<std::size_t>(nb.id)] = true;
          ++count;
          q.push_back(nb.id);
        }
    }
    if (count != s.size()) throw input_error("graph is not connected");
  }
  return s;
}

WeightedSystem random_system(const MetricPtr& metric, int n, std::uint64_t seed,
                             double extra_edge_p, int byz_count) {
  if (n < 1) throw input_error("random system needs n >= 1");
  std::mt19937_64 rng(seed);
  GraphSpec spec;
  spec.metric = metric;
  spec.root = "r";
  spec.nodes.push_back("r");
  for (int i = 1; i < n; ++i) spec.nodes.push_back("p" + std::to_string(i));

  const auto& ws = metric->weights();
  auto pick_weight = [&]() -> EdgeWeight {
    return ws[std::uniform_int_distribution<std::size_t>(0, ws.size() - 1)(rng)];
  };

  // random spanning tree: attach each node to a uniformly chosen earlier node
  for (int i = 1; i < n; ++i) {
    int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    spec.edges.emplace_back(spec.nodes[static_cast<std::size_t>(i)],
                            spec.nodes[static_cast<std::size_t>(parent)], pick_weight());
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool present = false;
      for (const auto& [a, b, w] : spec.edges)
        if ((a == spec.nodes[static_cast<std::size_t>(i)] &&
             b == spec.nodes[static_cast<std::size_t>(j)]) ||
            (a == spec.nodes[static_cast<std::size_t>(j)] &&
             b == spec.nodes[static_cast<std::size_t>(i)]))
          present = true;
      if (!present && coin(rng) < extra_edge_p)
        spec.edges.emplace_back(spec.nodes[static_cast<std::size_t>(i)],
                                spec.nodes[static_cast<std::size_t>(j)], pick_weight());
    }

  byz_count = std::min(byz_count, n - 1);
  std::vector<int> candidates;
  for (int i = 1; i < n; ++i) candidates.push_back(i);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (int k = 0; k < byz_count; ++k)
    spec.byzantine.push_back(spec.nodes[static_cast<std::size_t>(candidates[static_cast<std::size_t>(k)])]);

  return build_system(spec);
}

Configuration random_configuration(const WeightedSystem& system, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& vals = system.metric().values();
  Configuration cfg;
  cfg.states.reserve(static_cast<std::size_t>(system.size()));
  for (ProcessId v = 0; v < system.size(); ++v) {
    ProcessState st;
    int deg = static_cast<int>(system.neighbors(v).size());
    int p = std::uniform_int_distribution<int>(-1, deg - 1)(rng);
    st.prnt = p < 0 ? std::nullopt : std::optional<int>(p);
    st.level = vals[std::uniform_int_distribution<std::size_t>(0, vals.size() - 1)(rng)];
    st.dist = std::uniform_int_distribution<int>(0, system.size())(rng);
    cfg.states.push_back(st);
  }
  return cfg;
}

void write_dot(std::ostream& os, const WeightedSystem& system, const Configuration* config,
               const std::vector<ProcessId>* sb, const std::vector<ProcessId>* sb_star) {
  auto in = [](const std::vector<ProcessId>* set, ProcessId v) {
    return set && std::find(set->begin(), set->end(), v) != set->end();
  };
  os << "graph system {\n  node [shape=circle];\n";
  for (ProcessId v = 0; v < system.size(); ++v) {
    os << "  \"" << system.name_of(v) << "\" [";
    if (v == system.root()) os << "shape=doublecircle, ";
    if (system.is_byzantine(v)) os << "shape=box, color=red, ";
    if (in(sb_star, v))
      os << "style=filled, fillcolor=lightblue, ";
    else if (in(sb, v))
      os << "style=filled, fillcolor=mistyrose, ";
    os << "label=\"" << system.name_of(v);
    if (config) os << "\\n" << system.metric().display_value(config->at(v).level);
    os << "\"];\n";
  }
  for (ProcessId v = 0; v < system.size(); ++v)
    for (const auto& nb : system.neighbors(v)) {
      if (nb.id < v) continue;
      os << "  \"" << system.name_of(v) << "\" -- \"" << system.name_of(nb.id) << "\" [label=\""
         << system.metric().display_weight(nb.weight) << "\"];\n";
    }
  if (config) {
    for (ProcessId v = 0; v < system.size(); ++v) {
      const auto& st = config->at(v);
      if (!st.prnt) continue;
      ProcessId parent = system.neighbor_at(v, *st.prnt);
      os << "  \"" << system.name_of(v) << "\" -- \"" << system.name_of(parent)
         << "\" [dir=forward, color=blue, constraint=false, style=bold];\n";
    }
  }
  os << "}\n";
}

}  // namespace byzstab
