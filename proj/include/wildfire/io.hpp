#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wildfire/emergency.hpp"
#include "wildfire/plan.hpp"
#include "wildfire/scenario.hpp"

namespace wildfire {

inline constexpr int kPlanSchemaVersion = 1;

/// Plan as JSON: routes with waypoint ids and coordinates, clusters and edge mapping.
/// Timing fields are left out so the text depends only on inputs.
std::string plan_to_json_text(const Plan& plan, const Scenario& scenario);

/// Rebuilds a plan against its scenario; route metrics and edge loads are recomputed.
/// Throws std::runtime_error on malformed input or ids that do not fit the scenario.
Plan plan_from_json_text(const std::string& text, const Scenario& scenario);

/// One row per flown leg: uav_id,x1,y1,x2,y2.
std::string route_geometry_csv(const Plan& plan, const Scenario& scenario);

inline constexpr const char* kMetricsHeader =
    "method,seed,fleet_size,total_length_m,total_energy_wh,mean_response_s,planning_time_s";
std::string metrics_row(const Plan& plan, const Scenario& scenario, std::uint64_t seed);

std::string events_to_json_text(const std::vector<EmergencyEvent>& events);
std::vector<EmergencyEvent> events_from_json_text(const std::string& text);

inline constexpr const char* kTraceHeader =
    "event,sensor_id,alert_time_s,priority,uav_id,own_uav_id,edge_id,edge_fallback,direct,t_queue_s,"
    "t_dispatch_travel_s,t_tra_s,t_delivery_travel_s,t_exe_s,response_time_s,dispatch_time_s,"
    "resume_time_s,resume_waypoint,deadline_met";
std::string trace_csv(const std::vector<EmergencyTrace>& traces);

/// Sorted values paired with cumulative fractions i/n; the last fraction is 1.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

/// Fixed six-decimal rendering used by every CSV writer.
std::string fmt_num(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace wildfire
