#include "wildfire/emergency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "wildfire/clustering.hpp"
#include "wildfire/timing.hpp"

namespace wildfire {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nearest_edge_distance(Point2D q, std::span<const EdgeNode> edges) {
  double best = kInf;
  for (const auto& e : edges) best = std::min(best, distance(q, e.pos));
  return best;
}

/// Cumulative arc length at each polyline vertex.
std::vector<double> cumulative(std::span<const Point2D> poly) {
  std::vector<double> cum(poly.size(), 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i) cum[i] = cum[i - 1] + distance(poly[i - 1], poly[i]);
  return cum;
}

}  // namespace

std::vector<Point2D> tour_polyline(const Route& route, std::span<const Sensor> sensors,
                                   std::span<const EdgeNode> edges) {
  const auto depot = edges[static_cast<std::size_t>(route.depot)].pos;
  std::vector<Point2D> poly{depot};
  for (int sid : route.waypoints) poly.push_back(sensors[static_cast<std::size_t>(sid)].pos);
  poly.push_back(depot);
  return poly;
}

Point2D point_at_arc(std::span<const Point2D> polyline, double s) {
  if (polyline.empty()) throw std::invalid_argument("point_at_arc: empty polyline");
  const auto cum = cumulative(polyline);
  const double perimeter = cum.back();
  if (!(perimeter > 0.0)) return polyline.front();
  s = std::fmod(s, perimeter);
  if (s < 0.0) s += perimeter;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    if (s <= cum[i]) {
      const double seg = cum[i] - cum[i - 1];
      if (seg <= 0.0) return polyline[i];
      const double f = (s - cum[i - 1]) / seg;
      return {polyline[i - 1].x + f * (polyline[i].x - polyline[i - 1].x),
              polyline[i - 1].y + f * (polyline[i].y - polyline[i - 1].y)};
    }
  }
  return polyline.back();
}

Point2D uav_position_at(const Route& route, std::span<const Sensor> sensors,
                        std::span<const EdgeNode> edges, double v_g, double t_s, double phase_m) {
  if (t_s < 0.0) throw std::invalid_argument("uav_position_at: t must be >= 0");
  const auto poly = tour_polyline(route, sensors, edges);
  return point_at_arc(poly, v_g * t_s + phase_m);
}

int select_dispatch_uav(std::span<const UavState> uavs, Point2D sensor,
                        std::span<const EdgeNode> edges) {
  const double to_edge = nearest_edge_distance(sensor, edges);
  int best = -1;
  double best_cost = kInf;
  for (const auto& u : uavs) {
    if (u.mode != UavMode::kPatrol) continue;
    const double cost = distance(u.pos, sensor) + to_edge;
    if (cost < best_cost || (cost == best_cost && u.uav_id < best)) {
      best_cost = cost;
      best = u.uav_id;
    }
  }
  return best;
}

DeliveryChoice select_delivery_edge(Point2D sensor, std::span<const EdgeNode> edges,
                                    const EdgeLoadState& load, double theta_max) {
  if (edges.empty()) throw std::invalid_argument("select_delivery_edge: no edges");
  DeliveryChoice c;
  double best = kInf;
  for (const auto& e : edges) {
    if (!(load.utilization(e.id) < theta_max)) continue;
    const double d = distance(sensor, e.pos);
    if (d < best) {
      best = d;
      c.edge_id = e.id;
    }
  }
  if (c.edge_id >= 0) return c;
  c.fallback = true;
  double least = kInf;
  for (const auto& e : edges) {
    const double u = load.utilization(e.id);
    if (u < least) {
      least = u;
      c.edge_id = e.id;
    }
  }
  return c;
}

int resume_waypoint(Point2D pos, const Route& route, std::span<const Sensor> sensors) {
  int best = -1;
  double best_d = kInf;
  for (std::size_t k = 0; k < route.waypoints.size(); ++k) {
    const double d = distance(pos, sensors[static_cast<std::size_t>(route.waypoints[k])].pos);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

int fallback_edge(Point2D uav_pos, std::span<const EdgeNode> edges, const EdgeLoadState& load,
                  std::span<const bool> reachable, const EdgeScoring& scoring) {
  int best = -1;
  double best_score = kInf;
  for (const auto& e : edges) {
    const auto k = static_cast<std::size_t>(e.id);
    if (k < reachable.size() && !reachable[k]) continue;
    const double score = scoring.omega_d * distance(uav_pos, e.pos) / scoring.distance_norm_m +
                         scoring.omega_l * load.utilization(e.id);
    if (score < best_score) {
      best_score = score;
      best = e.id;
    }
  }
  if (best < 0) throw std::runtime_error("fallback_edge: no reachable edge, delivery deferred");
  return best;
}

namespace {

struct Uav {
  std::vector<Point2D> poly;
  std::vector<double> cum;
  double perimeter = 0.0;
  double anchor_time = 0.0;  // patrol resumed at this time ...
  double anchor_arc = 0.0;   // ... from this arc position
  double free_at = 0.0;      // off patrol until then
  double absence = 0.0;

  double arc_at(double t) const {
    if (!(perimeter > 0.0)) return 0.0;
    return std::fmod(anchor_arc + (t - anchor_time) * speed, perimeter);
  }
  double speed = 0.0;
};

}  // namespace

SimResult simulate(const Plan& plan, const Scenario& scenario, std::span<const EmergencyEvent> events,
                   const SimOptions& opts, double theta_max, Rng& rng) {
  const auto& p = scenario.physical;
  if (!(opts.horizon_s > 0.0)) throw std::invalid_argument("simulate: horizon must be > 0");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    if (ev.sensor_id < 0 || ev.sensor_id >= static_cast<int>(scenario.sensors.size()))
      throw std::invalid_argument("simulate: unknown sensor in event");
    if (ev.alert_time_s < 0.0 || ev.alert_time_s >= opts.horizon_s)
      throw std::invalid_argument("simulate: alert time outside the horizon");
    if (i > 0 && ev.alert_time_s < events[i - 1].alert_time_s)
      throw std::invalid_argument("simulate: events must be sorted by alert time");
  }

  SimResult out;
  std::vector<Uav> uavs(plan.routes.size());
  for (std::size_t j = 0; j < uavs.size(); ++j) {
    auto& u = uavs[j];
    u.poly = tour_polyline(plan.routes[j], scenario.sensors, scenario.edges);
    u.cum = cumulative(u.poly);
    u.perimeter = u.cum.back();
    u.speed = p.v_g;
    u.anchor_arc = u.perimeter > 0.0 ? rng.uniform(0.0, u.perimeter) : 0.0;
    out.initial_phase_m.push_back(u.anchor_arc);
  }

  const auto& load = plan.assignment.load;
  auto serve_direct = [&](std::size_t idx) {
    const auto& ev = events[idx];
    const auto& s = scenario.sensors[static_cast<std::size_t>(ev.sensor_id)];
    EmergencyTrace tr;
    tr.event_index = static_cast<int>(idx);
    tr.sensor_id = ev.sensor_id;
    tr.alert_time_s = ev.alert_time_s;
    tr.priority = s.fire_history;
    tr.direct = true;
    tr.edge_id = plan.assignment.direct_map.at(ev.sensor_id);
    tr.t_tra = transmission_time(s.request.data_size_mb, p.data_rate_mbps);
    tr.t_exe = execution_time(s.request.compute_mi,
                              scenario.edges[static_cast<std::size_t>(tr.edge_id)].capacity_mips);
    tr.response_time_s = tr.t_tra + tr.t_exe;
    tr.dispatch_time_s = tr.resume_time_s = ev.alert_time_s;
    tr.deadline_met = tr.response_time_s <= p.t_urgent_s;
    return tr;
  };

  auto dispatch = [&](std::size_t idx, int j, double now) {
    const auto& ev = events[idx];
    const auto& s = scenario.sensors[static_cast<std::size_t>(ev.sensor_id)];
    auto& u = uavs[static_cast<std::size_t>(j)];
    const auto& route = plan.routes[static_cast<std::size_t>(j)];
    const Point2D from = point_at_arc(u.poly, u.arc_at(now));

    EmergencyTrace tr;
    tr.event_index = static_cast<int>(idx);
    tr.sensor_id = ev.sensor_id;
    tr.alert_time_s = ev.alert_time_s;
    tr.priority = s.fire_history;
    tr.uav_id = route.uav_id;
    tr.own_uav_id = plan.clustering.cluster_of(ev.sensor_id);
    const auto choice = select_delivery_edge(s.pos, scenario.edges, load, theta_max);
    tr.edge_id = choice.edge_id;
    tr.edge_fallback = choice.fallback;
    const auto& edge = scenario.edges[static_cast<std::size_t>(choice.edge_id)];
    tr.t_queue = now - ev.alert_time_s;
    tr.t_dispatch_travel = distance(from, s.pos) / p.v_g;
    tr.t_tra = transmission_time(s.request.data_size_mb, p.data_rate_mbps);
    tr.t_delivery_travel = distance(s.pos, edge.pos) / p.v_g;
    tr.t_exe = execution_time(s.request.compute_mi, edge.capacity_mips);
    tr.response_time_s = tr.t_queue + tr.t_dispatch_travel + tr.t_tra + tr.t_delivery_travel + tr.t_exe;
    tr.deadline_met = tr.response_time_s <= p.t_urgent_s;
    tr.dispatch_time_s = now;

    const double at_edge = now + tr.t_dispatch_travel + tr.t_tra + tr.t_delivery_travel;
    const int k = resume_waypoint(edge.pos, route, scenario.sensors);
    const Point2D back = k < 0 ? u.poly.front() : u.poly[static_cast<std::size_t>(k) + 1];
    tr.resume_waypoint = k < 0 ? -1 : route.waypoints[static_cast<std::size_t>(k)];
    u.free_at = at_edge + distance(edge.pos, back) / p.v_g;
    u.anchor_time = u.free_at;
    u.anchor_arc = k < 0 ? 0.0 : u.cum[static_cast<std::size_t>(k) + 1];
    u.absence += u.free_at - now;
    tr.resume_time_s = u.free_at;
    return tr;
  };

  // Pending alerts ordered by fire history (desc), then alert time, then input order.
  std::vector<std::size_t> queue;
  auto before = [&](std::size_t a, std::size_t b) {
    const auto& ea = events[a];
    const auto& eb = events[b];
    const int ha = scenario.sensors[static_cast<std::size_t>(ea.sensor_id)].fire_history;
    const int hb = scenario.sensors[static_cast<std::size_t>(eb.sensor_id)].fire_history;
    return std::make_tuple(-ha, ea.alert_time_s, a) < std::make_tuple(-hb, eb.alert_time_s, b);
  };

  std::size_t next = 0;
  double now = 0.0;
  while (next < events.size() || !queue.empty()) {
    double t = next < events.size() ? events[next].alert_time_s : kInf;
    if (!queue.empty())
      for (const auto& u : uavs)
        if (u.free_at > now) t = std::min(t, u.free_at);
    if (t == kInf) throw std::logic_error("simulate: queued alert can never be served");
    now = std::max(now, t);
    while (next < events.size() && events[next].alert_time_s <= now) {
      const int sid = events[next].sensor_id;
      if (plan.assignment.direct_map.count(sid)) {
        out.traces.push_back(serve_direct(next));
      } else {
        if (plan.clustering.cluster_of(sid) < 0)
          throw std::invalid_argument("simulate: event sensor is not covered by the plan");
        queue.push_back(next);
      }
      ++next;
    }
    std::sort(queue.begin(), queue.end(), before);
    for (auto it = queue.begin(); it != queue.end();) {
      const auto& ev = events[*it];
      int j = -1;
      if (opts.policy == DispatchPolicy::kOwnCluster) {
        const int own = plan.clustering.cluster_of(ev.sensor_id);
        if (uavs[static_cast<std::size_t>(own)].free_at <= now) j = own;
      } else {
        std::vector<UavState> states;
        for (std::size_t k = 0; k < uavs.size(); ++k) {
          UavState st;
          st.uav_id = static_cast<int>(k);
          st.mode = uavs[k].free_at <= now ? UavMode::kPatrol : UavMode::kReturning;
          st.arc_position = uavs[k].arc_at(now);
          st.pos = point_at_arc(uavs[k].poly, st.arc_position);
          states.push_back(st);
        }
        j = select_dispatch_uav(states, scenario.sensors[static_cast<std::size_t>(ev.sensor_id)].pos,
                                scenario.edges);
        if (j < 0) break;  // everyone busy, keep strict priority order
      }
      if (j < 0) {
        ++it;
        continue;
      }
      out.traces.push_back(dispatch(*it, j, now));
      it = queue.erase(it);
    }
  }
  std::sort(out.traces.begin(), out.traces.end(),
            [](const EmergencyTrace& a, const EmergencyTrace& b) { return a.event_index < b.event_index; });

  // Normal service: each cluster's revisit period stretched by its UAV's share of time off patrol.
  std::vector<bool> alerted(scenario.sensors.size(), false);
  for (const auto& ev : events) alerted[static_cast<std::size_t>(ev.sensor_id)] = true;
  const auto base = response_times(plan, scenario);
  double sum_without = 0.0;
  double sum_with = 0.0;
  std::size_t count = 0;
  for (const auto& u : uavs) out.impact.absence_s.push_back(u.absence);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (alerted[i]) continue;
    const auto& b = base[i];
    double with = b.t_total;
    if (b.path_kind == PathKind::kUavMediated) {
      const auto j = static_cast<std::size_t>(plan.clustering.cluster_of(static_cast<int>(i)));
      const double a = std::min(uavs[j].absence, opts.horizon_s);
      const double stretch = a < opts.horizon_s ? opts.horizon_s / (opts.horizon_s - a) : kInf;
      with = b.t_total - b.t_wait + expected_wait(plan.routes[j].length_m * stretch, p);
    }
    sum_without += b.t_total;
    sum_with += with;
    ++count;
  }
  if (count > 0) {
    out.impact.mean_without_s = sum_without / static_cast<double>(count);
    out.impact.mean_with_s = sum_with / static_cast<double>(count);
    out.impact.delta_s = out.impact.mean_with_s - out.impact.mean_without_s;
    out.impact.delta_fraction =
        out.impact.mean_without_s > 0.0 ? out.impact.delta_s / out.impact.mean_without_s : 0.0;
  }
  return out;
}

double theorem2_bound(const Plan& plan, const Scenario& scenario, double theta_max) {
  const auto& p = scenario.physical;
  const auto radius = cluster_radius(plan.clustering, scenario.sensors);
  const double r_max = radius.empty() ? 0.0 : *std::max_element(radius.begin(), radius.end());
  double d_max = 0.0;
  double tra_max = 0.0;
  double exe_max = 0.0;
  for (int sid : plan.partition.uav) {
    const auto& s = scenario.sensors[static_cast<std::size_t>(sid)];
    const auto c = select_delivery_edge(s.pos, scenario.edges, plan.assignment.load, theta_max);
    const auto& e = scenario.edges[static_cast<std::size_t>(c.edge_id)];
    d_max = std::max(d_max, distance(s.pos, e.pos));
    tra_max = std::max(tra_max, transmission_time(s.request.data_size_mb, p.data_rate_mbps));
    exe_max = std::max(exe_max, execution_time(s.request.compute_mi, e.capacity_mips));
  }
  return 2.0 * r_max / p.v_g + d_max / p.v_g + tra_max + exe_max;
}

std::vector<EmergencyEvent> auto_events(const Plan& plan, const Scenario& scenario, double horizon_s,
                                        Rng& rng, int count, int min_history) {
  std::vector<int> ids;
  for (int sid : plan.partition.uav)
    if (scenario.sensors[static_cast<std::size_t>(sid)].fire_history > min_history) ids.push_back(sid);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return scenario.sensors[static_cast<std::size_t>(a)].fire_history >
           scenario.sensors[static_cast<std::size_t>(b)].fire_history;
  });
  if (static_cast<int>(ids.size()) > count) ids.resize(static_cast<std::size_t>(count));
  std::vector<EmergencyEvent> events;
  for (int sid : ids) events.push_back({sid, rng.uniform(0.0, horizon_s)});
  std::stable_sort(events.begin(), events.end(), [](const EmergencyEvent& a, const EmergencyEvent& b) {
    return a.alert_time_s < b.alert_time_s;
  });
  return events;
}

}  // namespace wildfire
