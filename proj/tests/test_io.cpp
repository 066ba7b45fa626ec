#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "wildfire/experiment.hpp"
#include "wildfire/io.hpp"
#include "wildfire/stats.hpp"

using namespace wildfire;
using namespace wftest;

namespace {

Plan default_plan(std::uint64_t seed, const Scenario& s) {
  AlgoParams a;
  a.seed = seed;
  return std::get<Plan>(plan(s, a));
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(PlanJson, RoundTripKeepsRoutesAndValidates) {
  const auto s = default_scenario(6);
  const auto p = default_plan(6, s);
  const auto text = plan_to_json_text(p, s);
  const auto back = plan_from_json_text(text, s);
  EXPECT_EQ(back.m, p.m);
  EXPECT_EQ(back.method, p.method);
  ASSERT_EQ(back.routes.size(), p.routes.size());
  for (std::size_t j = 0; j < p.routes.size(); ++j) {
    EXPECT_EQ(back.routes[j].waypoints, p.routes[j].waypoints);
    EXPECT_EQ(back.routes[j].depot, p.routes[j].depot);
    EXPECT_NEAR(back.routes[j].length_m, p.routes[j].length_m, 1e-9);
  }
  EXPECT_EQ(back.assignment.cluster_map, p.assignment.cluster_map);
  EXPECT_EQ(back.assignment.direct_map, p.assignment.direct_map);
  EXPECT_TRUE(validate(back, s).all_pass());
  EXPECT_EQ(plan_to_json_text(back, s), text);
}

TEST(PlanJson, RejectsForeignIds) {
  const auto s = default_scenario(6);
  const auto p = default_plan(6, s);
  auto small = s;
  small.sensors.resize(10);
  small.meta.sensor_hotspot.resize(10);
  EXPECT_THROW(plan_from_json_text(plan_to_json_text(p, s), small), std::runtime_error);
  EXPECT_THROW(plan_from_json_text("{", s), std::runtime_error);
}

TEST(Geometry, OneRowPerLeg) {
  const auto s = default_scenario(2);
  const auto p = default_plan(2, s);
  int legs = 0;
  for (const auto& r : p.routes)
    if (!r.waypoints.empty()) legs += static_cast<int>(r.waypoints.size()) + 1;
  EXPECT_EQ(count_lines(route_geometry_csv(p, s)), legs + 1);
}

TEST(Metrics, HeaderAndRowWidthsAgree) {
  const auto s = default_scenario(2);
  const auto p = default_plan(2, s);
  const std::string row = metrics_row(p, s, 2);
  const std::string header = kMetricsHeader;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
  EXPECT_EQ(row.rfind("proposed,2,", 0), 0u);
}

TEST(Events, RoundTripAndValidation) {
  const std::vector<EmergencyEvent> ev{{3, 10.5}, {7, 99.0}};
  EXPECT_EQ(events_from_json_text(events_to_json_text(ev)), ev);
  EXPECT_THROW(events_from_json_text(R"([{"sensor_id":1,"alert_time_s":5,"extra":1}])"),
               std::runtime_error);
  EXPECT_THROW(events_from_json_text(R"([{"sensor_id":1}])"), std::runtime_error);
}

TEST(Trace, HeaderAndRows) {
  std::vector<EmergencyTrace> t(3);
  const auto csv = trace_csv(t);
  EXPECT_EQ(count_lines(csv), 4);
  EXPECT_EQ(csv.rfind(kTraceHeader, 0), 0u);
}

TEST(Cdf, SortedAndEndsAtOne) {
  const auto cdf = empirical_cdf({3.0, 1.0, 2.0, 2.0});
  ASSERT_EQ(cdf.size(), 4u);
  EXPECT_EQ(cdf.front().first, 1.0);
  EXPECT_EQ(cdf[1].second, 0.5);
  EXPECT_EQ(cdf.back().first, 3.0);
  EXPECT_EQ(cdf.back().second, 1.0);
  EXPECT_TRUE(empirical_cdf({}).empty());
}

TEST(Format, FixedSixDecimals) {
  EXPECT_EQ(fmt_num(1.5), "1.500000");
  EXPECT_EQ(fmt_num(-0.0), "0.000000");
  EXPECT_EQ(fmt_num(-1e-9), "0.000000");
}

TEST(Stats, StudentIntervalExample) {
  const double v[] = {1, 2, 3, 4, 5};
  const auto s = summarize(v);
  EXPECT_EQ(s.n, 5);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_NEAR(s.stddev, std::sqrt(2.5), 1e-12);
  // Table value t(0.975, 4) = 2.776445.
  EXPECT_NEAR(s.ci95_half, 2.776445 * std::sqrt(2.5) / std::sqrt(5.0), 1e-5);
  EXPECT_TRUE(s.has_ci);
}

TEST(Stats, SingleValueHasNoInterval) {
  const double v[] = {4};
  const auto s = summarize(v);
  EXPECT_EQ(s.mean, 4.0);
  EXPECT_FALSE(s.has_ci);
  EXPECT_EQ(s.ci95_half, 0.0);
}

TEST(Methods, NamesRoundTrip) {
  for (auto m : {Method::kProposed, Method::kGa, Method::kPso, Method::kGreedy})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_FALSE(parse_method("annealing").has_value());
}

TEST(Compare, IndependentOfThreadCount) {
  CompareSpec spec;
  spec.seeds = {1, 2};
  spec.sensor_counts = {30, 40};
  spec.method_cfg.ga.population = 10;
  spec.method_cfg.ga.generations = 5;
  spec.method_cfg.pso.swarm = 10;
  spec.method_cfg.pso.iterations = 5;
  spec.threads = 1;
  const auto a = run_compare(spec);
  spec.threads = 3;
  const auto b = run_compare(spec);
  ASSERT_EQ(a.size(), 16u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].method, b[i].method);
    EXPECT_EQ(a[i].n_sensors, b[i].n_sensors);
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].ok, b[i].ok);
    EXPECT_EQ(a[i].fleet_size, b[i].fleet_size);
    EXPECT_EQ(a[i].total_length_m, b[i].total_length_m);
    EXPECT_EQ(a[i].responses, b[i].responses);
  }
  EXPECT_EQ(a[0].method, Method::kProposed);
  EXPECT_EQ(a[0].n_sensors, 30);
  EXPECT_EQ(a[3].method, Method::kGreedy);

  const auto rep = make_report(spec, a);
  EXPECT_FALSE(rep.ci_omitted);
  EXPECT_EQ(count_lines(rep.cells_csv), 17);
  EXPECT_NE(rep.summary_json.find("\"proposed\""), std::string::npos);
}
