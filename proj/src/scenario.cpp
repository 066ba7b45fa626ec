#include "wildfire/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "json_lines.hpp"
#include "wildfire/random.hpp"

namespace wildfire {

using nlohmann::json;

void validate(const GenConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid generator config: ") + what);
  };
  require(cfg.n_sensors > 0, "n_sensors must be > 0");
  require(cfg.n_edges > 0, "n_edges must be > 0");
  require(cfg.n_hotspots >= 0, "n_hotspots must be >= 0");
  require(cfg.hotspot_fraction >= 0.0 && cfg.hotspot_fraction <= 1.0,
          "hotspot_fraction must lie in [0,1]");
  require(cfg.n_hotspots > 0 || cfg.hotspot_fraction == 0.0,
          "hotspot_fraction > 0 needs at least one hotspot");
  require(cfg.hotspot_sigma_m >= 0.0, "hotspot_sigma_m must be >= 0");
  require(cfg.fire_history_max >= 0, "fire_history_max must be >= 0");
  require(cfg.alpha_range_mb.first > 0.0 && cfg.alpha_range_mb.first <= cfg.alpha_range_mb.second,
          "alpha_range_mb must be positive and ordered");
  require(cfg.beta_range_mi.first > 0.0 && cfg.beta_range_mi.first <= cfg.beta_range_mi.second,
          "beta_range_mi must be positive and ordered");
  require(cfg.edge_capacity_range_mips.first > 0.0 &&
              cfg.edge_capacity_range_mips.first <= cfg.edge_capacity_range_mips.second,
          "edge_capacity_range_mips must be positive and ordered");
}

// Draw order: hotspot centers, hotspot membership shuffle, then per sensor (position, fire
// history, alpha, beta), then per edge (position, capacity).
Scenario generate(const GenConfig& cfg, const PhysicalParams& p) {
  validate(cfg);
  validate(p);
  const double side = p.side_m();
  Rng rng(derive_seed(cfg.seed, "scenario"));

  Scenario s;
  s.physical = p;
  s.meta.seed = cfg.seed;
  for (int k = 0; k < cfg.n_hotspots; ++k) {
    const double x = rng.uniform(0.0, side);
    const double y = rng.uniform(0.0, side);
    s.meta.hotspots.push_back({{x, y}, cfg.hotspot_sigma_m});
  }

  const auto n_hot = static_cast<int>(std::lround(cfg.hotspot_fraction * cfg.n_sensors));
  std::vector<char> in_hotspot(static_cast<std::size_t>(cfg.n_sensors), 0);
  std::fill_n(in_hotspot.begin(), n_hot, 1);
  for (int i = cfg.n_sensors - 1; i > 0; --i) {
    std::swap(in_hotspot[static_cast<std::size_t>(i)],
              in_hotspot[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  }

  const int h_max = cfg.fire_history_max;
  auto clip = [side](double v) { return std::clamp(v, 0.0, side); };
  for (int i = 0; i < cfg.n_sensors; ++i) {
    Sensor sensor;
    sensor.id = i;
    int hotspot = -1;
    if (in_hotspot[static_cast<std::size_t>(i)]) {
      hotspot = static_cast<int>(rng.uniform_int(0, cfg.n_hotspots - 1));
      const auto& hs = s.meta.hotspots[static_cast<std::size_t>(hotspot)];
      const double x = rng.normal(hs.center.x, hs.sigma_m);
      const double y = rng.normal(hs.center.y, hs.sigma_m);
      sensor.pos = {clip(x), clip(y)};
      sensor.fire_history = static_cast<int>(rng.uniform_int(h_max / 2, h_max));
    } else {
      const double x = rng.uniform(0.0, side);
      const double y = rng.uniform(0.0, side);
      sensor.pos = {x, y};
      sensor.fire_history = static_cast<int>(rng.uniform_int(0, h_max / 10));
    }
    sensor.request.data_size_mb = rng.uniform(cfg.alpha_range_mb.first, cfg.alpha_range_mb.second);
    sensor.request.compute_mi = rng.uniform(cfg.beta_range_mi.first, cfg.beta_range_mi.second);
    s.sensors.push_back(sensor);
    s.meta.sensor_hotspot.push_back(hotspot);
  }

  for (int k = 0; k < cfg.n_edges; ++k) {
    EdgeNode e;
    e.id = k;
    const double x = rng.uniform(0.0, side);
    const double y = rng.uniform(0.0, side);
    e.pos = {x, y};
    e.capacity_mips =
        rng.uniform(cfg.edge_capacity_range_mips.first, cfg.edge_capacity_range_mips.second);
    s.edges.push_back(e);
  }
  return s;
}

void validate(const Scenario& s) {
  validate(s.physical);
  const double side = s.physical.side_m();
  if (s.sensors.empty()) throw std::invalid_argument("scenario needs at least one sensor");
  if (s.edges.empty()) throw std::invalid_argument("scenario needs at least one edge node");
  for (std::size_t i = 0; i < s.sensors.size(); ++i) {
    const auto& x = s.sensors[i];
    const auto tag = "sensor " + std::to_string(i) + ": ";
    if (x.id != static_cast<int>(i)) throw std::invalid_argument(tag + "ids must be contiguous");
    if (!inside_square(x.pos, side)) throw std::invalid_argument(tag + "outside monitoring area");
    if (x.fire_history < 0) throw std::invalid_argument(tag + "negative fire history");
    if (!(x.request.data_size_mb > 0.0) || !(x.request.compute_mi > 0.0))
      throw std::invalid_argument(tag + "request sizes must be > 0");
  }
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    const auto& e = s.edges[k];
    const auto tag = "edge " + std::to_string(k) + ": ";
    if (e.id != static_cast<int>(k)) throw std::invalid_argument(tag + "ids must be contiguous");
    if (!inside_square(e.pos, side)) throw std::invalid_argument(tag + "outside monitoring area");
    if (!(e.capacity_mips > 0.0)) throw std::invalid_argument(tag + "capacity must be > 0");
  }
}

namespace {

json physical_to_json(const PhysicalParams& p) {
  return json{{"area_km2", p.area_km2},
              {"r_s", p.r_s},
              {"r_g", p.r_g},
              {"r_e", p.r_e},
              {"data_rate_mbps", p.data_rate_mbps},
              {"v_g", p.v_g},
              {"p_fly_w", p.p_fly_w},
              {"p_comm_w", p.p_comm_w},
              {"e_max_wh", p.e_max_wh},
              {"t_max_s", p.t_max_s},
              {"t_period_s", p.t_period_s},
              {"t_urgent_s", p.t_urgent_s},
              {"m_max", p.m_max},
              {"per_hop_latency_s", p.per_hop_latency_s}};
}

class Reader {
 public:
  explicit Reader(const std::string& text) : lines_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ScenarioParseError(path, lines_.line_of(path), msg);
  }

  const json& member(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing field");
    return *it;
  }

  double number(const json& obj, const std::string& path, const char* key) const {
    const auto& v = member(obj, path, key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
  }

  long long integer(const json& obj, const std::string& path, const char* key) const {
    const auto& v = member(obj, path, key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    return v.get<long long>();
  }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> keys) const {
    for (const auto& [k, _] : obj.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
        fail(join(path, k), "unknown field");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  detail::LineIndex lines_;
};

std::size_t line_at_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string to_json_text(const Scenario& s) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema_version\": " << kScenarioSchemaVersion << ",\n";
  out << "  \"physical\": " << physical_to_json(s.physical).dump() << ",\n";
  out << "  \"sensors\": [";
  for (std::size_t i = 0; i < s.sensors.size(); ++i) {
    const auto& x = s.sensors[i];
    json j{{"id", x.id},
           {"x", x.pos.x},
           {"y", x.pos.y},
           {"fire_history", x.fire_history},
           {"data_size_mb", x.request.data_size_mb},
           {"compute_mi", x.request.compute_mi}};
    out << (i ? ",\n    " : "\n    ") << j.dump();
  }
  out << "\n  ],\n";
  out << "  \"edges\": [";
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    const auto& e = s.edges[k];
    json j{{"id", e.id}, {"x", e.pos.x}, {"y", e.pos.y}, {"capacity_mips", e.capacity_mips}};
    out << (k ? ",\n    " : "\n    ") << j.dump();
  }
  out << "\n  ],\n";
  json hotspots = json::array();
  for (const auto& h : s.meta.hotspots)
    hotspots.push_back({{"x", h.center.x}, {"y", h.center.y}, {"sigma_m", h.sigma_m}});
  json meta{{"seed", s.meta.seed},
            {"edge_placement", s.meta.edge_placement},
            {"hotspots", hotspots},
            {"sensor_hotspot", s.meta.sensor_hotspot}};
  out << "  \"meta\": " << meta.dump() << "\n";
  out << "}\n";
  return out.str();
}

Scenario from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError("<document>", line_at_byte(text, e.byte), e.what());
  }
  Reader r(text);
  if (!doc.is_object()) r.fail("", "top level must be an object");
  r.only_keys(doc, "", {"schema_version", "physical", "sensors", "edges", "meta"});
  if (r.integer(doc, "", "schema_version") != kScenarioSchemaVersion)
    r.fail("schema_version", "unsupported schema version");

  Scenario s;
  const auto& ph = r.member(doc, "", "physical");
  r.only_keys(ph, "physical",
              {"area_km2", "r_s", "r_g", "r_e", "data_rate_mbps", "v_g", "p_fly_w", "p_comm_w",
               "e_max_wh", "t_max_s", "t_period_s", "t_urgent_s", "m_max", "per_hop_latency_s"});
  auto& p = s.physical;
  p.area_km2 = r.number(ph, "physical", "area_km2");
  p.r_s = r.number(ph, "physical", "r_s");
  p.r_g = r.number(ph, "physical", "r_g");
  p.r_e = r.number(ph, "physical", "r_e");
  p.data_rate_mbps = r.number(ph, "physical", "data_rate_mbps");
  p.v_g = r.number(ph, "physical", "v_g");
  p.p_fly_w = r.number(ph, "physical", "p_fly_w");
  p.p_comm_w = r.number(ph, "physical", "p_comm_w");
  p.e_max_wh = r.number(ph, "physical", "e_max_wh");
  p.t_max_s = r.number(ph, "physical", "t_max_s");
  p.t_period_s = r.number(ph, "physical", "t_period_s");
  p.t_urgent_s = r.number(ph, "physical", "t_urgent_s");
  p.m_max = static_cast<int>(r.integer(ph, "physical", "m_max"));
  p.per_hop_latency_s = r.number(ph, "physical", "per_hop_latency_s");
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    r.fail("physical", e.what());
  }
  const double side = p.side_m();

  const auto& sensors = r.member(doc, "", "sensors");
  if (!sensors.is_array()) r.fail("sensors", "expected an array");
  if (sensors.empty()) r.fail("sensors", "at least one sensor is required");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const auto path = "sensors[" + std::to_string(i) + "]";
    const auto& j = sensors[i];
    r.only_keys(j, path, {"id", "x", "y", "fire_history", "data_size_mb", "compute_mi"});
    Sensor x;
    x.id = static_cast<int>(r.integer(j, path, "id"));
    if (x.id != static_cast<int>(i)) r.fail(path + ".id", "ids must be contiguous from 0");
    x.pos = {r.number(j, path, "x"), r.number(j, path, "y")};
    if (!inside_square(x.pos, side)) r.fail(path + ".x", "position outside the monitoring area");
    const auto h = r.integer(j, path, "fire_history");
    if (h < 0) r.fail(path + ".fire_history", "must be >= 0");
    x.fire_history = static_cast<int>(h);
    x.request.data_size_mb = r.number(j, path, "data_size_mb");
    if (!(x.request.data_size_mb > 0.0)) r.fail(path + ".data_size_mb", "must be > 0");
    x.request.compute_mi = r.number(j, path, "compute_mi");
    if (!(x.request.compute_mi > 0.0)) r.fail(path + ".compute_mi", "must be > 0");
    s.sensors.push_back(x);
  }

  const auto& edges = r.member(doc, "", "edges");
  if (!edges.is_array()) r.fail("edges", "expected an array");
  if (edges.empty()) r.fail("edges", "at least one edge node is required");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto path = "edges[" + std::to_string(k) + "]";
    const auto& j = edges[k];
    r.only_keys(j, path, {"id", "x", "y", "capacity_mips"});
    EdgeNode e;
    e.id = static_cast<int>(r.integer(j, path, "id"));
    if (e.id != static_cast<int>(k)) r.fail(path + ".id", "ids must be contiguous from 0");
    e.pos = {r.number(j, path, "x"), r.number(j, path, "y")};
    if (!inside_square(e.pos, side)) r.fail(path + ".x", "position outside the monitoring area");
    e.capacity_mips = r.number(j, path, "capacity_mips");
    if (!(e.capacity_mips > 0.0)) r.fail(path + ".capacity_mips", "must be > 0");
    s.edges.push_back(e);
  }

  if (auto it = doc.find("meta"); it != doc.end()) {
    const auto& m = *it;
    r.only_keys(m, "meta", {"seed", "edge_placement", "hotspots", "sensor_hotspot"});
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) r.fail("meta.seed", "expected a non-negative integer");
      s.meta.seed = m["seed"].get<std::uint64_t>();
    }
    if (m.contains("edge_placement")) {
      if (!m["edge_placement"].is_string()) r.fail("meta.edge_placement", "expected a string");
      s.meta.edge_placement = m["edge_placement"].get<std::string>();
    }
    if (m.contains("hotspots")) {
      const auto& hs = m["hotspots"];
      if (!hs.is_array()) r.fail("meta.hotspots", "expected an array");
      for (std::size_t k = 0; k < hs.size(); ++k) {
        const auto path = "meta.hotspots[" + std::to_string(k) + "]";
        s.meta.hotspots.push_back({{r.number(hs[k], path, "x"), r.number(hs[k], path, "y")},
                                   r.number(hs[k], path, "sigma_m")});
      }
    }
    if (m.contains("sensor_hotspot")) {
      const auto& sh = m["sensor_hotspot"];
      if (!sh.is_array() || (!sh.empty() && sh.size() != s.sensors.size()))
        r.fail("meta.sensor_hotspot", "expected one entry per sensor");
      for (const auto& v : sh) {
        if (!v.is_number_integer()) r.fail("meta.sensor_hotspot", "expected integers");
        s.meta.sensor_hotspot.push_back(v.get<int>());
      }
    }
  }
  return s;
}

void save(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json_text(s);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

}  // namespace wildfire
