// Command-line front end: metric property checks, containment areas,
// simulation with adversaries, and the scripted impossibility scenarios.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "byzstab/analysis.hpp"
#include "byzstab/metric_io.hpp"
#include "byzstab/scenario.hpp"
#include "byzstab/system_io.hpp"
#include "byzstab/trace_io.hpp"

using namespace byzstab;
using nlohmann::json;

namespace {

MetricOptions options_from_flags(int window, int weight_window, std::int64_t flow_mr,
                                 int grid_den) {
  MetricOptions opt;
  if (window > 0) opt.value_window = window;
  if (weight_window > 0) opt.weight_window = weight_window;
  if (flow_mr >= 0) opt.flow_mr = flow_mr;
  if (grid_den > 0) opt.grid_denominator = grid_den;
  return opt;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path);
  out << contents;
}

int max_steps_budget(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("BYZSTAB_BUDGET")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 5000;
}

ContainmentArea area_by_name(const WeightedSystem& system, const std::string& name) {
  if (name == "S_B") return compute_area(system, AreaKind::SB);
  if (name == "S_B_star") return compute_area(system, AreaKind::SBStar);
  if (name.rfind("radius:", 0) == 0)
    return compute_area(system, AreaKind::Radius, std::stoi(name.substr(7)));
  throw input_error("unknown area: " + name + " (use S_B, S_B_star, or radius:<c>)");
}

int cmd_check_metric(const std::string& builtin, const std::string& file, int window,
                     int weight_window, std::int64_t flow_mr, int grid_den) {
  RoutingMetric metric =
      !file.empty()
          ? load_metric_file(file)
          : RoutingMetric::builtin_by_name(
                builtin, options_from_flags(window, weight_window, flow_mr, grid_den));
  std::cout << metric_properties_json(metric).dump(2) << "\n";
  return 0;
}

int cmd_areas(const std::string& graph, const std::string& dot_out, const std::string& json_out) {
  WeightedSystem system = load_system_file(graph);
  MuTable table = compute_mu_table(system);
  ContainmentArea sb = compute_area(system, table, AreaKind::SB);
  ContainmentArea sbstar = compute_area(system, table, AreaKind::SBStar);

  json out{{"schema_version", 1},
           {"graph", graph},
           {"metric", system.metric().name()},
           {"areas", json::array({area_json(system, sb), area_json(system, sbstar)})},
           {"mu_table", mu_table_json(system, table)}};
  std::cout << out.dump(2) << "\n";
  if (!json_out.empty()) write_file(json_out, out.dump(2) + "\n");
  if (!dot_out.empty()) {
    std::ostringstream dot;
    write_dot(dot, system, nullptr, &sb.members, &sbstar.members);
    write_file(dot_out, dot.str());
  }
  return 0;
}

int cmd_simulate(const std::string& graph, const std::string& daemon, const std::string& strategy,
                 std::uint64_t seed, int max_steps_flag, const std::string& area_name,
                 double byz_rate, const std::string& out_dir) {
  WeightedSystem system = load_system_file(graph);
  int max_steps = max_steps_budget(max_steps_flag);

  Schedule sched;
  sched.seed = seed;
  if (daemon == "central-fair")
    sched.daemon = DaemonKind::Central;
  else if (daemon == "distributed-fair")
    sched.daemon = DaemonKind::Distributed;
  else
    throw input_error("unknown daemon: " + daemon);

  AdversaryStrategy strat = NoAdversary{};
  if (strategy == "random")
    strat = RandomWrites{byz_rate};
  else if (strategy != "none")
    throw input_error("unknown strategy: " + strategy + " (use none or random)");
  if (strategy == "random" && system.byzantine().empty())
    throw input_error("random-writes strategy needs a Byzantine set in the graph");

  Configuration initial = random_configuration(system, seed ^ 0xc0ffee);
  StopCondition stop = strategy == "none" ? StopCondition::quiescence(max_steps)
                                          : StopCondition::steps(max_steps);
  ExecutionTrace trace = run(system, initial, sched, strat, stop);

  ContainmentArea area = area_by_name(system, area_name);
  DisruptionReport disruptions = count_disruptions(system, trace, area);
  ContainmentVerdict verdict = check_ta_strict_containment(system, trace, area);
  MuTable table = compute_mu_table(system);

  json manifest{{"command", "simulate"}, {"graph", graph},     {"daemon", daemon},
                {"strategy", strategy},  {"seed", seed},       {"max_steps", max_steps},
                {"area", area_name},     {"byz_rate", byz_rate}};
  json report{{"schema_version", 1},
              {"manifest", manifest},
              {"area", area_json(system, area)},
              {"mu_table", mu_table_json(system, table)},
              {"disruptions", disruption_report_json(system, disruptions)},
              {"containment",
               {{"reached", verdict.reached},
                {"suffix_start", verdict.suffix_start},
                {"holds_from_start", verdict.holds_from_start}}},
              {"steps", trace.length()},
              {"rounds", trace.meta.rounds},
              {"quiescent", trace.meta.stop_reached}};
  std::cout << report.dump(2) << "\n";

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ostringstream tr;
    write_trace_jsonl(tr, system, trace);
    write_file(out_dir + "/trace.jsonl", tr.str());
    write_file(out_dir + "/report.json", report.dump(2) + "\n");
  }
  return 0;
}

int cmd_scenario(const std::string& name, const std::string& metric_name,
                 const std::string& metric_file, int c, int cycles, const std::string& area,
                 std::uint64_t seed, int window, int weight_window, std::int64_t flow_mr,
                 int grid_den, const std::string& out_dir) {
  MetricPtr metric = std::make_shared<RoutingMetric>(
      !metric_file.empty()
          ? load_metric_file(metric_file)
          : RoutingMetric::builtin_by_name(
                metric_name, options_from_flags(window, weight_window, flow_mr, grid_den)));

  Scenario scenario;
  if (name == "theorem5-case1")
    scenario = build_theorem5_case1(metric, c, seed);
  else if (name == "theorem5-case2")
    scenario = build_theorem5_case2(metric, c, seed);
  else if (name == "theorem5-case3")
    scenario = build_theorem5_case3(metric, c, seed);
  else if (name == "theorem6") {
    GadgetArea ga = GadgetArea::Empty;
    if (area == "v")
      ga = GadgetArea::V;
    else if (area == "vprime")
      ga = GadgetArea::VPrime;
    else if (area != "empty")
      throw input_error("theorem6 area must be empty, v, or vprime");
    scenario = build_theorem6_gadget(metric, ga, seed);
  } else {
    throw input_error("unknown scenario: " + name);
  }

  CycleRunResult result = run_cycles(scenario, cycles);
  const WeightedSystem& system = *scenario.system;

  json manifest{{"command", "scenario"}, {"scenario", name}, {"metric", metric->name()},
                {"c", c},                {"cycles", cycles}, {"area", area},
                {"seed", seed}};
  json report{{"schema_version", 1},
              {"manifest", manifest},
              {"system", system_to_json(system)},
              {"area", area_json(system, scenario.area)},
              {"cycles_completed", result.cycles_completed},
              {"disruptions", disruption_report_json(system, result.report)},
              {"steps", result.trace.length()}};
  std::cout << report.dump(2) << "\n";

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ostringstream tr;
    write_trace_jsonl(tr, system, result.trace);
    write_file(out_dir + "/trace.jsonl", tr.str());
    write_file(out_dir + "/report.json", report.dump(2) + "\n");
    std::ostringstream dot;
    ContainmentArea sb = compute_area(system, AreaKind::SB);
    ContainmentArea sbstar = compute_area(system, AreaKind::SBStar);
    write_dot(dot, system, &result.trace.steps.back().after, &sb.members, &sbstar.members);
    write_file(out_dir + "/final.dot", dot.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"byzstab: maximum metric tree construction under Byzantine faults"};
  app.require_subcommand(1);

  std::string builtin, metric_file, graph, dot_out, json_out, daemon = "central-fair";
  std::string strategy = "none", area_name = "S_B", scen_name, scen_area = "empty", out_dir;
  std::uint64_t seed = 1;
  int window = 0, weight_window = 0, grid_den = 0, max_steps = 0, c = 1, cycles = 1;
  std::int64_t flow_mr = -1;
  double byz_rate = 0.5;

  auto* check = app.add_subcommand("check-metric", "decide metric properties");
  check->add_option("--builtin", builtin, "builtin metric name (SP,F,R,NC,BFS,MET)");
  check->add_option("--file", metric_file, "metric definition JSON");
  check->add_option("--window", window, "value window for infinite domains");
  check->add_option("--weight-window", weight_window, "weight window for infinite domains");
  check->add_option("--flow-mr", flow_mr, "mr for the flow metric");
  check->add_option("--grid-denominator", grid_den, "densest denominator for [0,1] grids");

  auto* areas = app.add_subcommand("areas", "compute containment areas S_B and S_B*");
  areas->add_option("--graph", graph, "graph JSON")->required();
  areas->add_option("--dot", dot_out, "write a DOT rendering with the areas marked");
  areas->add_option("--json", json_out, "also write the report to this path");

  auto* sim = app.add_subcommand("simulate", "run the protocol under a daemon and adversary");
  sim->add_option("--graph", graph, "graph JSON")->required();
  sim->add_option("--daemon", daemon, "central-fair | distributed-fair");
  sim->add_option("--byz-strategy", strategy, "none | random");
  sim->add_option("--byz-rate", byz_rate, "per-step write probability for random strategy");
  sim->add_option("--seed", seed, "run seed");
  sim->add_option("--max-steps", max_steps, "step budget (also BYZSTAB_BUDGET)");
  sim->add_option("--area", area_name, "S_B | S_B_star | radius:<c>");
  sim->add_option("--out", out_dir, "directory for trace.jsonl and report.json");

  auto* scen = app.add_subcommand("scenario", "reproduce a proof construction");
  scen->add_option("name", scen_name, "theorem5-case1|theorem5-case2|theorem5-case3|theorem6")
      ->required();
  scen->add_option("--metric", builtin, "builtin metric name");
  scen->add_option("--metric-file", metric_file, "metric definition JSON");
  scen->add_option("--c", c, "containment radius for theorem5 scenarios");
  scen->add_option("--cycles", cycles, "adversary cycles to run");
  scen->add_option("--area", scen_area, "theorem6 candidate area: empty | v | vprime");
  scen->add_option("--seed", seed, "run seed");
  scen->add_option("--window", window, "value window for infinite domains");
  scen->add_option("--weight-window", weight_window, "weight window");
  scen->add_option("--flow-mr", flow_mr, "mr for the flow metric");
  scen->add_option("--grid-denominator", grid_den, "grid denominator for [0,1] domains");
  scen->add_option("--out", out_dir, "directory for trace, report, and DOT output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      if (builtin.empty() && metric_file.empty())
        throw input_error("check-metric needs --builtin or --file");
      return cmd_check_metric(builtin, metric_file, window, weight_window, flow_mr, grid_den);
    }
    if (areas->parsed()) return cmd_areas(graph, dot_out, json_out);
    if (sim->parsed())
      return cmd_simulate(graph, daemon, strategy, seed, max_steps, area_name, byz_rate, out_dir);
    if (scen->parsed())
      return cmd_scenario(scen_name, builtin, metric_file, c, cycles, scen_area, seed, window,
                          weight_window, flow_mr, grid_den, out_dir);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const inapplicable_error& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 3;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
