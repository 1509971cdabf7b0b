#include "leoroute/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace leoroute {

namespace {

using nlohmann::json;

std::string_view model_name(DistanceModel m) { return m == DistanceModel::Arc ? "arc" : "chord"; }

DistanceModel parse_model(const std::string& s, const std::string& key) {
  if (s == "arc") return DistanceModel::Arc;
  if (s == "chord") return DistanceModel::Chord;
  throw ParseError(key + ": expected \"arc\" or \"chord\", got \"" + s + "\"");
}

std::string_view event_name(EventKind k) {
  switch (k) {
    case EventKind::FailIsl: return "fail_isl";
    case EventKind::FailSatellite: return "fail_satellite";
    case EventKind::CongestIsl: return "congest_isl";
  }
  return "";
}

// Reads one section, tracking which keys were consumed.
class Section {
 public:
  Section(const json& obj, std::string name, std::vector<std::string>* defaulted)
      : obj_(obj), name_(std::move(name)), defaulted_(defaulted) {
    if (!obj_.is_object()) throw ParseError(name_ + ": expected an object");
  }

  template <typename T>
  void required(const char* key, T& out) {
    if (!obj_.contains(key)) throw ParseError(path(key) + ": required key missing");
    read(key, out);
  }

  template <typename T>
  void optional(const char* key, T& out) {
    if (!obj_.contains(key)) {
      if (defaulted_) defaulted_->push_back(path(key));
      return;
    }
    read(key, out);
  }

  void consume(const char* key) { seen_.insert(key); }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ParseError(path(key.c_str()) + ": unknown key");
    }
  }

  std::string path(const char* key) const { return name_.empty() ? std::string(key) : name_ + "." + key; }

 private:
  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    try {
      convert(obj_.at(key), out, path(key));
    } catch (const json::exception& e) {
      throw ParseError(path(key) + ": " + e.what());
    }
  }

  static void convert(const json& j, double& out, const std::string& key) {
    if (!j.is_number()) throw ParseError(key + ": expected a number");
    out = j.get<double>();
  }
  static void convert(const json& j, int& out, const std::string& key) {
    if (!j.is_number_integer()) throw ParseError(key + ": expected an integer");
    out = j.get<int>();
  }
  static void convert(const json& j, std::uint64_t& out, const std::string& key) {
    if (!j.is_number_unsigned()) throw ParseError(key + ": expected a non-negative integer");
    out = j.get<std::uint64_t>();
  }
  static void convert(const json& j, bool& out, const std::string& key) {
    if (!j.is_boolean()) throw ParseError(key + ": expected true or false");
    out = j.get<bool>();
  }
  static void convert(const json& j, std::string& out, const std::string& key) {
    if (!j.is_string()) throw ParseError(key + ": expected a string");
    out = j.get<std::string>();
  }
  static void convert(const json& j, Range& out, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      throw ParseError(key + ": expected [lo, hi]");
    }
    out = {j[0].get<double>(), j[1].get<double>()};
  }
  static void convert(const json& j, ScoreWeights& out, const std::string& key) {
    if (!j.is_array() || j.size() != 5) throw ParseError(key + ": expected five weights [k1..k5]");
    for (const auto& v : j) {
      if (!v.is_number()) throw ParseError(key + ": weights must be numbers");
    }
    out = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>(), j[4].get<double>()};
  }
  static void convert(const json& j, std::vector<Scheme>& out, const std::string& key) {
    if (!j.is_array()) throw ParseError(key + ": expected a list of router names");
    out.clear();
    for (const auto& v : j) {
      if (!v.is_string()) throw ParseError(key + ": router names must be strings");
      try {
        out.push_back(parse_scheme(v.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(key + ": " + e.what());
      }
    }
  }
  static void convert(const json& j, GridCoord& out, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
      throw ParseError(key + ": expected [orbit, slot]");
    }
    out = {j[0].get<int>(), j[1].get<int>()};
  }

  const json& obj_;
  std::string name_;
  std::vector<std::string>* defaulted_;
  std::set<std::string> seen_;
};

ScheduledEvent parse_event(const json& j, const std::string& name) {
  Section s(j, name, nullptr);
  ScheduledEvent ev;
  std::string kind;
  s.required("kind", kind);
  s.required("tick", ev.tick);
  if (kind == "fail_isl" || kind == "congest_isl") {
    ev.kind = kind == "fail_isl" ? EventKind::FailIsl : EventKind::CongestIsl;
    s.required("a", ev.a);
    s.required("b", ev.b);
    if (ev.kind == EventKind::CongestIsl) s.required("extra_load_gbps", ev.extra_load_gbps);
  } else if (kind == "fail_satellite") {
    ev.kind = EventKind::FailSatellite;
    s.required("satellite", ev.satellite);
  } else {
    throw ParseError(name + ".kind: unknown event kind \"" + kind + "\"");
  }
  s.finish();
  return ev;
}

json range_json(Range r) { return json::array({r.lo, r.hi}); }
json coord_json(GridCoord c) { return json::array({c.orbit, c.slot}); }

}  // namespace

Scenario parse_scenario_text(const std::string& text, std::vector<std::string>* defaulted) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario: top level must be an object");

  std::vector<std::string> missing;
  for (const char* key : {"constellation", "links", "routing", "workload", "output"}) {
    if (!doc.contains(key)) missing.emplace_back(key);
  }
  if (!missing.empty()) {
    std::string msg = "scenario: missing required sections:";
    for (const auto& m : missing) msg += " " + m;
    throw ParseError(msg);
  }

  Scenario sc;
  Section top(doc, "", defaulted);

  for (const char* key : {"constellation", "links", "routing", "workload", "output", "events"}) top.consume(key);
  {
    Section s(doc["constellation"], "constellation", defaulted);
    auto& c = sc.constellation;
    s.required("num_orbits", c.num_orbits);
    s.required("sats_per_orbit", c.sats_per_orbit);
    s.required("altitude_km", c.altitude_km);
    s.optional("earth_radius_km", c.earth_radius_km);
    s.optional("atm_height_km", c.atm_height_km);
    s.optional("inclination_deg", c.inclination_deg);
    s.optional("phase_offset", c.phase_offset);
    std::string model(model_name(c.distance_model));
    s.optional("distance_model", model);
    c.distance_model = parse_model(model, s.path("distance_model"));
    s.finish();
  }
  {
    Section s(doc["links"], "links", defaulted);
    auto& l = sc.links;
    s.optional("intra_bandwidth_gbps", l.intra_bandwidth_gbps);
    s.optional("inter_bandwidth_gbps", l.inter_bandwidth_gbps);
    s.optional("initial_cd", l.initial_cd);
    s.optional("initial_plr", l.initial_plr);
    s.optional("cd_threshold", l.cd_threshold);
    s.optional("seed_packets", l.seed_packets);
    s.optional("packets_per_gbps", l.packets_per_gbps);
    s.finish();
  }
  {
    Section s(doc["routing"], "routing", defaulted);
    auto& r = sc.routing;
    s.required("max_cd", r.max_cd);
    s.required("delta_cd", r.delta_cd);
    s.optional("weights", r.weights);
    s.optional("routers", r.routers);
    s.optional("sway_k", r.sway_k);
    s.optional("sdra_max_paths", r.sdra_max_paths);
    s.optional("congestion_monitor", r.congestion_monitor);
    s.finish();
  }
  {
    Section s(doc["workload"], "workload", defaulted);
    auto& w = sc.workload;
    s.required("seed", sc.seed);
    s.required("n_flows", w.n_flows);
    s.optional("qos_fraction", w.qos_fraction);
    s.optional("qos_bandwidth_gbps", w.qos_bandwidth_gbps);
    s.optional("nonqos_demand_gbps", w.nonqos_demand_gbps);
    s.optional("max_delay_ms", w.max_delay_ms);
    s.optional("max_jitter_ms", w.max_jitter_ms);
    s.optional("max_plr", w.max_plr);
    s.optional("duration_s", sc.duration_s);
    s.optional("heartbeat_period_s", sc.heartbeat_period_s);
    s.finish();
  }
  {
    Section s(doc["output"], "output", defaulted);
    s.optional("directory", sc.output.directory);
    s.optional("window_s", sc.output.window_s);
    s.finish();
  }
  if (doc.contains("events")) {
    const json& events = doc["events"];
    if (!events.is_array()) throw ParseError("events: expected a list");
    for (std::size_t i = 0; i < events.size(); ++i) {
      sc.events.push_back(parse_event(events[i], "events[" + std::to_string(i) + "]"));
    }
  }
  top.finish();

  if (sc.output.window_s < 1) throw ParseError("output.window_s: must be >= 1");
  try {
    sc.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return sc;
}

Scenario parse_scenario(const std::filesystem::path& path, std::vector<std::string>* defaulted) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), defaulted);
}

std::string dump_scenario(const Scenario& sc) {
  const auto& c = sc.constellation;
  const auto& l = sc.links;
  const auto& r = sc.routing;
  const auto& w = sc.workload;
  json routers = json::array();
  for (Scheme s : r.routers) routers.push_back(std::string(scheme_name(s)));
  json events = json::array();
  for (const auto& ev : sc.events) {
    json e{{"kind", std::string(event_name(ev.kind))}, {"tick", ev.tick}};
    if (ev.kind == EventKind::FailSatellite) {
      e["satellite"] = ev.satellite;
    } else {
      e["a"] = coord_json(ev.a);
      e["b"] = coord_json(ev.b);
      if (ev.kind == EventKind::CongestIsl) e["extra_load_gbps"] = ev.extra_load_gbps;
    }
    events.push_back(e);
  }
  json doc{
      {"constellation",
       {{"num_orbits", c.num_orbits},
        {"sats_per_orbit", c.sats_per_orbit},
        {"altitude_km", c.altitude_km},
        {"earth_radius_km", c.earth_radius_km},
        {"atm_height_km", c.atm_height_km},
        {"inclination_deg", c.inclination_deg},
        {"phase_offset", c.phase_offset},
        {"distance_model", std::string(model_name(c.distance_model))}}},
      {"links",
       {{"intra_bandwidth_gbps", l.intra_bandwidth_gbps},
        {"inter_bandwidth_gbps", range_json(l.inter_bandwidth_gbps)},
        {"initial_cd", range_json(l.initial_cd)},
        {"initial_plr", range_json(l.initial_plr)},
        {"cd_threshold", l.cd_threshold},
        {"seed_packets", l.seed_packets},
        {"packets_per_gbps", l.packets_per_gbps}}},
      {"routing",
       {{"weights", json::array({r.weights.k1, r.weights.k2, r.weights.k3, r.weights.k4, r.weights.k5})},
        {"max_cd", r.max_cd},
        {"delta_cd", r.delta_cd},
        {"routers", routers},
        {"sway_k", r.sway_k},
        {"sdra_max_paths", r.sdra_max_paths},
        {"congestion_monitor", r.congestion_monitor}}},
      {"workload",
       {{"seed", sc.seed},
        {"n_flows", w.n_flows},
        {"qos_fraction", w.qos_fraction},
        {"qos_bandwidth_gbps", range_json(w.qos_bandwidth_gbps)},
        {"nonqos_demand_gbps", range_json(w.nonqos_demand_gbps)},
        {"max_delay_ms", range_json(w.max_delay_ms)},
        {"max_jitter_ms", range_json(w.max_jitter_ms)},
        {"max_plr", range_json(w.max_plr)},
        {"duration_s", sc.duration_s},
        {"heartbeat_period_s", sc.heartbeat_period_s}}},
      {"output", {{"directory", sc.output.directory}, {"window_s", sc.output.window_s}}},
      {"events", events},
  };
  return doc.dump(2) + "\n";
}

}  // namespace leoroute
