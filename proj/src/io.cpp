#include "wildfire/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wildfire/timing.hpp"

namespace wildfire {

using nlohmann::json;

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

std::string plan_to_json_text(const Plan& plan, const Scenario& scenario) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema_version\": " << kPlanSchemaVersion << ",\n";
  out << "  \"method\": " << json(plan.method).dump() << ",\n";
  out << "  \"fleet_size\": " << plan.m << ",\n";
  out << "  \"total_length_m\": " << json(plan.total_length_m()).dump() << ",\n";
  out << "  \"total_energy_wh\": " << json(plan.total_energy_wh()).dump() << ",\n";
  out << "  \"mean_response_s\": " << json(mean_response_time(plan, scenario)).dump() << ",\n";
  out << "  \"routes\": [";
  for (std::size_t j = 0; j < plan.routes.size(); ++j) {
    const auto& r = plan.routes[j];
    const auto& c = plan.clustering.centers[j];
    json coords = json::array();
    for (int sid : r.waypoints) {
      const auto& q = scenario.sensors[static_cast<std::size_t>(sid)].pos;
      coords.push_back({q.x, q.y});
    }
    json row{{"uav_id", r.uav_id},        {"depot_edge", r.depot},
             {"center", {c.x, c.y}},      {"waypoints", r.waypoints},
             {"coordinates", coords},     {"length_m", r.length_m},
             {"revisit_s", r.revisit_s},  {"energy_wh", r.energy_wh}};
    out << (j ? ",\n    " : "\n    ") << row.dump();
  }
  out << "\n  ],\n";
  json direct = json::array();
  for (const auto& [sid, edge] : plan.assignment.direct_map) direct.push_back({sid, edge});
  out << "  \"direct_assignment\": " << direct.dump() << "\n";
  out << "}\n";
  return out.str();
}

namespace {

[[noreturn]] void bad_plan(const std::string& msg) { throw std::runtime_error("plan: " + msg); }

int checked_id(const json& v, std::size_t bound, const char* what) {
  if (!v.is_number_integer()) bad_plan(std::string(what) + " must be an integer");
  const auto id = v.get<long long>();
  if (id < 0 || static_cast<std::size_t>(id) >= bound) bad_plan(std::string(what) + " out of range");
  return static_cast<int>(id);
}

}  // namespace

Plan plan_from_json_text(const std::string& text, const Scenario& scenario) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_plan(e.what());
  }
  if (!doc.is_object()) bad_plan("top level must be an object");
  if (doc.value("schema_version", 0) != kPlanSchemaVersion) bad_plan("unsupported schema_version");
  const auto& p = scenario.physical;
  Plan plan;
  plan.method = doc.value("method", std::string{});
  plan.partition = partition_sensors(scenario.sensors, scenario.edges, p);
  const auto& routes = doc.at("routes");
  if (!routes.is_array()) bad_plan("routes must be an array");
  plan.m = static_cast<int>(routes.size());
  if (doc.value("fleet_size", -1) != plan.m) bad_plan("fleet_size does not match routes");

  const auto n_sensors = scenario.sensors.size();
  const auto n_edges = scenario.edges.size();
  std::vector<int> label(n_sensors, -1);
  plan.clustering.m = plan.m;
  plan.assignment.load = EdgeLoadState(scenario.edges);
  for (std::size_t j = 0; j < routes.size(); ++j) {
    const auto& r = routes[j];
    if (checked_id(r.at("uav_id"), routes.size(), "uav_id") != static_cast<int>(j))
      bad_plan("routes must be listed in uav_id order");
    const int depot = checked_id(r.at("depot_edge"), n_edges, "depot_edge");
    const auto& c = r.at("center");
    plan.clustering.centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    std::vector<int> wps;
    for (const auto& w : r.at("waypoints")) {
      const int sid = checked_id(w, n_sensors, "waypoint");
      if (label[static_cast<std::size_t>(sid)] >= 0) bad_plan("sensor visited twice");
      label[static_cast<std::size_t>(sid)] = static_cast<int>(j);
      wps.push_back(sid);
    }
    plan.assignment.cluster_map.push_back(depot);
    plan.routes.push_back(make_route(static_cast<int>(j), scenario.edges[static_cast<std::size_t>(depot)],
                                     std::move(wps), scenario.sensors, p));
  }
  for (std::size_t sid = 0; sid < n_sensors; ++sid) {
    if (label[sid] < 0) continue;
    plan.clustering.sensor_ids.push_back(static_cast<int>(sid));
    plan.clustering.labels.push_back(label[sid]);
  }
  const auto groups = plan.clustering.groups();
  for (std::size_t j = 0; j < groups.size(); ++j)
    plan.assignment.load.load[static_cast<std::size_t>(plan.assignment.cluster_map[j])] +=
        cluster_demand(scenario.sensors, groups[j], p.t_period_s);
  for (const auto& pair : doc.at("direct_assignment")) {
    const int sid = checked_id(pair.at(0), n_sensors, "direct sensor");
    const int edge = checked_id(pair.at(1), n_edges, "direct edge");
    plan.assignment.direct_map[sid] = edge;
    plan.assignment.load.load[static_cast<std::size_t>(edge)] +=
        scenario.sensors[static_cast<std::size_t>(sid)].request.compute_mi / p.t_period_s;
  }
  return plan;
}

std::string route_geometry_csv(const Plan& plan, const Scenario& scenario) {
  std::string out = "uav_id,x1,y1,x2,y2\n";
  for (const auto& r : plan.routes) {
    std::vector<Point2D> pts{scenario.edges[static_cast<std::size_t>(r.depot)].pos};
    for (int sid : r.waypoints) pts.push_back(scenario.sensors[static_cast<std::size_t>(sid)].pos);
    pts.push_back(pts.front());
    if (r.waypoints.empty()) continue;
    for (std::size_t i = 1; i < pts.size(); ++i)
      out += std::to_string(r.uav_id) + "," + fmt_num(pts[i - 1].x) + "," + fmt_num(pts[i - 1].y) +
             "," + fmt_num(pts[i].x) + "," + fmt_num(pts[i].y) + "\n";
  }
  return out;
}

std::string metrics_row(const Plan& plan, const Scenario& scenario, std::uint64_t seed) {
  return plan.method + "," + std::to_string(seed) + "," + std::to_string(plan.m) + "," +
         fmt_num(plan.total_length_m()) + "," + fmt_num(plan.total_energy_wh()) + "," +
         fmt_num(mean_response_time(plan, scenario)) + "," + fmt_num(plan.planning_time_s);
}

std::string events_to_json_text(const std::vector<EmergencyEvent>& events) {
  json arr = json::array();
  for (const auto& e : events) arr.push_back({{"sensor_id", e.sensor_id}, {"alert_time_s", e.alert_time_s}});
  return arr.dump(2) + "\n";
}

std::vector<EmergencyEvent> events_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("events: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("events: expected a JSON list");
  std::vector<EmergencyEvent> events;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    const std::string where = "events[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("sensor_id") || !e.contains("alert_time_s"))
      throw std::runtime_error(where + ": needs sensor_id and alert_time_s");
    for (const auto& [k, _] : e.items())
      if (k != "sensor_id" && k != "alert_time_s") throw std::runtime_error(where + ": unknown key " + k);
    if (!e["sensor_id"].is_number_integer() || !e["alert_time_s"].is_number())
      throw std::runtime_error(where + ": wrong field type");
    events.push_back({e["sensor_id"].get<int>(), e["alert_time_s"].get<double>()});
  }
  std::stable_sort(events.begin(), events.end(), [](const EmergencyEvent& a, const EmergencyEvent& b) {
    return a.alert_time_s < b.alert_time_s;
  });
  return events;
}

std::string trace_csv(const std::vector<EmergencyTrace>& traces) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& t : traces) {
    out += std::to_string(t.event_index) + "," + std::to_string(t.sensor_id) + "," +
           fmt_num(t.alert_time_s) + "," + std::to_string(t.priority) + "," + std::to_string(t.uav_id) +
           "," + std::to_string(t.own_uav_id) + "," + std::to_string(t.edge_id) + "," +
           (t.edge_fallback ? "1" : "0") + "," + (t.direct ? "1" : "0") + "," + fmt_num(t.t_queue) + "," +
           fmt_num(t.t_dispatch_travel) + "," + fmt_num(t.t_tra) + "," + fmt_num(t.t_delivery_travel) +
           "," + fmt_num(t.t_exe) + "," + fmt_num(t.response_time_s) + "," + fmt_num(t.dispatch_time_s) +
           "," + fmt_num(t.resume_time_s) + "," + std::to_string(t.resume_waypoint) + "," +
           (t.deadline_met ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> rows;
  const auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    rows.emplace_back(values[i], static_cast<double>(i + 1) / n);
  return rows;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace wildfire
