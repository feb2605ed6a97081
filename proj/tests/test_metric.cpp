#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "byzstab/metric.hpp"
#include "byzstab/metric_io.hpp"
#include "testutil.hpp"

using namespace byzstab;

TEST_CASE("builtin met functions") {
  auto sp = RoutingMetric::builtin(BuiltinMetric::SP);
  CHECK(sp.met(Rational(3), Rational(4)) == Rational(7));

  MetricOptions fopt;
  fopt.flow_mr = 10;
  auto f = RoutingMetric::builtin(BuiltinMetric::F, fopt);
  CHECK(f.met(Rational(5), Rational(3)) == Rational(3));
  CHECK(f.mr() == Rational(10));

  auto met5 = RoutingMetric::builtin(BuiltinMetric::MET);
  CHECK(met5.met(Rational(3), Rational(1)) == Rational(2));
  CHECK(met5.met(Rational(0), Rational(1)) == Rational(0));
  CHECK(met5.mr() == Rational(3));

  auto nc = RoutingMetric::builtin(BuiltinMetric::NC);
  CHECK(nc.met(Rational(0), Rational(0)) == Rational(0));

  auto r = RoutingMetric::builtin(BuiltinMetric::R);
  CHECK(r.met(Rational(1, 2), Rational(3, 4)) == Rational(3, 8));

  CHECK_THROWS_AS(RoutingMetric::builtin_by_name("XX"), input_error);
}

TEST_CASE("order orientation puts mr on top") {
  auto sp = RoutingMetric::builtin(BuiltinMetric::SP);
  // smaller sums are closer to the maximum for SP
  CHECK(sp.less(Rational(7), Rational(3)));
  CHECK(!sp.less(Rational(3), Rational(7)));
  for (const auto& v : sp.values())
    CHECK(!sp.less(sp.mr(), v));

  auto met5 = RoutingMetric::builtin(BuiltinMetric::MET);
  CHECK(met5.less(Rational(1), Rational(2)));
  CHECK(!met5.less(met5.mr(), Rational(0)));
}

TEST_CASE("classification of the six builtins") {
  auto check = [](BuiltinMetric kind, bool strongly, bool exhaustive) {
    auto m = RoutingMetric::builtin(kind);
    const auto& p = m.properties();
    CAPTURE(m.name());
    CHECK(p.bounded);
    CHECK(p.monotonic);
    CHECK(p.maximizable);
    CHECK(p.strongly_maximizable == strongly);
    CHECK(p.domain_exhaustive == exhaustive);
    CHECK(p.maximizable == (p.bounded && p.monotonic));
  };
  check(BuiltinMetric::SP, false, false);
  check(BuiltinMetric::F, false, true);
  check(BuiltinMetric::R, false, false);
  check(BuiltinMetric::NC, true, true);
  check(BuiltinMetric::BFS, false, false);
  check(BuiltinMetric::MET, true, true);
}

TEST_CASE("fixed points and strict decrease behind the classifications") {
  auto bfs = RoutingMetric::builtin(BuiltinMetric::BFS);
  CHECK(bfs.properties().strictly_decreasing);
  CHECK(bfs.properties().fixed_points.empty());

  auto sp = RoutingMetric::builtin(BuiltinMetric::SP);
  CHECK(!sp.properties().strictly_decreasing);

  auto met5 = RoutingMetric::builtin(BuiltinMetric::MET);
  CHECK(met5.properties().strictly_decreasing);
  REQUIRE(met5.properties().fixed_points.size() == 1);
  CHECK(met5.properties().fixed_points[0] == Rational(0));

  auto nc = RoutingMetric::builtin(BuiltinMetric::NC);
  CHECK(nc.properties().strongly_maximizable);  // |M| = 1
}

TEST_CASE("boundedness restated: no sampled met result beats its input") {
  for (const auto& metric : testutil::all_builtins()) {
    if (!metric->properties().bounded) continue;
    for (const auto& m : metric->values())
      for (const auto& w : metric->weights()) {
        MetricValue out = metric->met(m, w);
        if (!metric->less(out, m)) CHECK(out == m);
      }
  }
}

TEST_CASE("order axioms on value samples") {
  for (const auto& metric : testutil::all_builtins()) {
    const auto& vals = metric->values();
    std::size_t take = std::min<std::size_t>(vals.size(), 50);
    for (std::size_t i = 0; i < take; ++i) {
      CHECK(!metric->less(vals[i], vals[i]));  // irreflexive
      for (std::size_t j = 0; j < take; ++j) {
        int rel = (vals[i] == vals[j] ? 1 : 0) + (metric->less(vals[i], vals[j]) ? 1 : 0) +
                  (metric->less(vals[j], vals[i]) ? 1 : 0);
        CHECK(rel == 1);  // total and exclusive
        for (std::size_t k = 0; k < take; ++k)
          if (metric->less(vals[i], vals[j]) && metric->less(vals[j], vals[k]))
            CHECK(metric->less(vals[i], vals[k]));
      }
    }
  }
}

TEST_CASE("utility condition holds for every builtin sample") {
  for (const auto& metric : testutil::all_builtins()) {
    CAPTURE(metric->name());
    CHECK(metric->utility_ok());
  }
}

TEST_CASE("fabricated test metrics") {
  auto nonmono = testutil::non_monotonic_metric();
  CHECK(nonmono->properties().bounded);
  CHECK(!nonmono->properties().monotonic);
  CHECK(nonmono->utility_ok());

  auto twofp = testutil::two_fixed_point_metric();
  CHECK(twofp->properties().strictly_decreasing);
  CHECK(twofp->properties().fixed_points.size() == 2);
  CHECK(!twofp->utility_ok());  // value 0 has no chain from mr

  auto rootflip = testutil::root_only_flip_metric();
  CHECK(rootflip->properties().bounded);
  CHECK(!rootflip->properties().monotonic);
  CHECK(rootflip->utility_ok());
}

TEST_CASE("table metric validation") {
  std::vector<MetricValue> values{Rational(0), Rational(1)};
  std::vector<EdgeWeight> weights{Rational(0)};
  CHECK_THROWS_AS(RoutingMetric::table("bad", values, weights, {{Rational(2)}, {Rational(0)}},
                                       Rational(1), OrderDir::Asc),
                  input_error);
  CHECK_THROWS_AS(RoutingMetric::table("badmr", values, weights,
                                       {{Rational(0)}, {Rational(1)}}, Rational(0),
                                       OrderDir::Asc),
                  input_error);
}

TEST_CASE("metric json round trip and builtin loading") {
  auto j = nlohmann::json{{"name", "MET"}, {"kind", "builtin"}};
  auto m = metric_from_json(j);
  CHECK(m.name() == "MET");
  CHECK(m.properties().strongly_maximizable);

  auto tj = nlohmann::json{{"name", "toy"},
                           {"kind", "table"},
                           {"values", {0, 1, 2}},
                           {"weights", {"a", "b"}},
                           {"met", {{0, 0}, {0, 1}, {1, 2}}},
                           {"mr", 2},
                           {"order", "asc"}};
  auto toy = metric_from_json(tj);
  CHECK(toy.met(Rational(2), *toy.weight_by_name("a")) == Rational(1));
  CHECK(toy.properties().bounded);

  CHECK_THROWS_AS(metric_from_json(nlohmann::json{{"kind", "table"}}), input_error);
}

TEST_CASE("rational grid values are exact") {
  MetricOptions opt;
  opt.grid_denominator = 4;
  auto r = RoutingMetric::builtin(BuiltinMetric::R, opt);
  // 0, 1/4, 1/3, 1/2, 2/3, 3/4, 1
  CHECK(r.values().size() == 7);
  CHECK(r.value_in_domain(Rational(5, 17)));   // any rational in [0,1]
  CHECK(!r.value_in_domain(Rational(3, 2)));
}
