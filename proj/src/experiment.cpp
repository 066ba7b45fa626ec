#include "wildfire/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wildfire/io.hpp"
#include "wildfire/stats.hpp"
#include "wildfire/timing.hpp"

namespace wildfire {

const char* to_string(Method m) {
  switch (m) {
    case Method::kProposed: return "proposed";
    case Method::kGa: return "ga";
    case Method::kPso: return "pso";
    case Method::kGreedy: return "greedy";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::kProposed, Method::kGa, Method::kPso, Method::kGreedy})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

PlanResult run_method(Method method, const Scenario& scenario, const AlgoParams& algo,
                      const MethodConfig& cfg) {
  switch (method) {
    case Method::kProposed: return plan(scenario, algo, cfg.variant);
    case Method::kGa: return ga_plan(scenario, algo, cfg.ga);
    case Method::kPso: return pso_plan(scenario, algo, cfg.pso);
    case Method::kGreedy: return greedy_plan(scenario, algo);
  }
  throw std::invalid_argument("run_method: unknown method");
}

int threads_from_env() {
  if (const char* v = std::getenv("FW_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Cell> run_compare(const CompareSpec& spec) {
  std::vector<int> counts = spec.sensor_counts;
  if (counts.empty()) counts.push_back(spec.gen.n_sensors);

  std::vector<Cell> cells;
  for (int n : counts)
    for (auto seed : spec.seeds)
      for (auto m : spec.methods) {
        Cell c;
        c.method = m;
        c.n_sensors = n;
        c.seed = seed;
        cells.push_back(c);
      }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      auto& c = cells[i];
      try {
        GenConfig gen = spec.gen;
        gen.n_sensors = c.n_sensors;
        gen.seed = c.seed;
        const auto scenario = generate(gen, spec.physical);
        AlgoParams algo = spec.algo;
        algo.seed = c.seed;
        const auto r = run_method(c.method, scenario, algo, spec.method_cfg);
        if (const auto* inf = std::get_if<Infeasible>(&r)) {
          c.error = inf->message();
          continue;
        }
        const auto& p = std::get<Plan>(r);
        c.ok = true;
        c.fleet_size = p.m;
        c.total_length_m = p.total_length_m();
        c.total_energy_wh = p.total_energy_wh();
        c.planning_time_s = p.planning_time_s;
        for (const auto& b : response_times(p, scenario)) c.responses.push_back(b.t_total);
        c.mean_response_s = mean_response_time(p, scenario);
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

namespace {

std::string ci_text(const Summary& s) {
  return s.has_ci ? fmt_num(s.mean) + " +- " + fmt_num(s.ci95_half) : fmt_num(s.mean);
}

}  // namespace

CompareReport make_report(const CompareSpec& spec, const std::vector<Cell>& cells) {
  CompareReport rep;
  rep.ci_omitted = spec.seeds.size() < 2;
  std::vector<int> counts;
  for (const auto& c : cells)
    if (std::find(counts.begin(), counts.end(), c.n_sensors) == counts.end()) counts.push_back(c.n_sensors);

  std::ostringstream cells_csv;
  cells_csv << "method,n_sensors,seed,status,fleet_size,total_length_m,total_energy_wh,mean_response_s,"
               "planning_time_s\n";
  for (const auto& c : cells) {
    cells_csv << to_string(c.method) << "," << c.n_sensors << "," << c.seed << ","
              << (c.ok ? "ok" : "infeasible") << "," << c.fleet_size << "," << fmt_num(c.total_length_m)
              << "," << fmt_num(c.total_energy_wh) << "," << fmt_num(c.mean_response_s) << ","
              << fmt_num(c.planning_time_s) << "\n";
  }
  rep.cells_csv = cells_csv.str();

  std::ostringstream table, summary, cdf, paired;
  summary << "method,n_sensors,runs,completed,mean_response_s,ci95_response_s,mean_energy_wh,"
             "ci95_energy_wh,mean_fleet_size,ci95_fleet_size,mean_length_m,mean_planning_time_s\n";
  cdf << "method,n_sensors,response_s,cum_fraction\n";
  paired << "n_sensors,seed,baseline,d_response_s,d_energy_wh,d_fleet_size\n";
  nlohmann::json js;
  js["seeds"] = spec.seeds;
  js["groups"] = nlohmann::json::array();

  char line[256];
  for (int n : counts) {
    table << "sensors = " << n << "\n";
    std::snprintf(line, sizeof line, "  %-9s %5s %28s %28s %24s\n", "method", "runs", "mean response s",
                  "energy Wh", "fleet");
    table << line;
    for (auto m : spec.methods) {
      std::vector<double> resp, energy, fleet, length, plan_t, all;
      int total = 0;
      for (const auto& c : cells) {
        if (c.n_sensors != n || c.method != m) continue;
        ++total;
        if (!c.ok) continue;
        resp.push_back(c.mean_response_s);
        energy.push_back(c.total_energy_wh);
        fleet.push_back(c.fleet_size);
        length.push_back(c.total_length_m);
        plan_t.push_back(c.planning_time_s);
        all.insert(all.end(), c.responses.begin(), c.responses.end());
      }
      const auto sr = summarize(resp), se = summarize(energy), sf = summarize(fleet),
                 sl = summarize(length), st = summarize(plan_t);
      std::snprintf(line, sizeof line, "  %-9s %2zu/%-2d %28s %28s %24s\n", to_string(m), resp.size(), total,
                    ci_text(sr).c_str(), ci_text(se).c_str(), ci_text(sf).c_str());
      table << line;
      summary << to_string(m) << "," << n << "," << total << "," << resp.size() << "," << fmt_num(sr.mean)
              << "," << (sr.has_ci ? fmt_num(sr.ci95_half) : "") << "," << fmt_num(se.mean) << ","
              << (se.has_ci ? fmt_num(se.ci95_half) : "") << "," << fmt_num(sf.mean) << ","
              << (sf.has_ci ? fmt_num(sf.ci95_half) : "") << "," << fmt_num(sl.mean) << ","
              << fmt_num(st.mean) << "\n";
      for (const auto& [v, f] : empirical_cdf(all))
        cdf << to_string(m) << "," << n << "," << fmt_num(v) << "," << fmt_num(f) << "\n";
      nlohmann::json g{{"method", to_string(m)},
                       {"n_sensors", n},
                       {"runs", total},
                       {"completed", resp.size()},
                       {"mean_response_s", sr.mean},
                       {"mean_energy_wh", se.mean},
                       {"mean_fleet_size", sf.mean},
                       {"mean_length_m", sl.mean}};
      if (sr.has_ci) {
        g["ci95_response_s"] = sr.ci95_half;
        g["ci95_energy_wh"] = se.ci95_half;
        g["ci95_fleet_size"] = sf.ci95_half;
      }
      js["groups"].push_back(g);
    }
    // Paired differences against the proposed planner on the same seed.
    for (auto seed : spec.seeds) {
      const Cell* base = nullptr;
      for (const auto& c : cells)
        if (c.n_sensors == n && c.seed == seed && c.method == Method::kProposed && c.ok) base = &c;
      if (!base) continue;
      for (const auto& c : cells) {
        if (c.n_sensors != n || c.seed != seed || c.method == Method::kProposed || !c.ok) continue;
        paired << n << "," << seed << "," << to_string(c.method) << ","
               << fmt_num(base->mean_response_s - c.mean_response_s) << ","
               << fmt_num(base->total_energy_wh - c.total_energy_wh) << ","
               << (base->fleet_size - c.fleet_size) << "\n";
      }
    }
  }
  rep.table = table.str();
  rep.summary_csv = summary.str();
  rep.cdf_csv = cdf.str();
  rep.paired_csv = paired.str();
  rep.summary_json = js.dump(2) + "\n";
  return rep;
}

}  // namespace wildfire
