#include "leoroute/sim_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string_view>

#include "leoroute/baselines.hpp"

namespace leoroute {

namespace {

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 16777619u;
  }
  return h;
}

std::mt19937_64 substream(std::uint64_t seed, std::string_view name) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), fnv1a(name)};
  return std::mt19937_64(seq);
}

double draw(std::mt19937_64& rng, Range r) {
  if (r.hi <= r.lo) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

void check_range(Range r, double lo, double hi, const char* what) {
  if (!(r.lo >= lo && r.hi <= hi && r.lo <= r.hi)) {
    throw ConfigError(std::string(what) + ": range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                      "] outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

bool carries_flow(EdgeId e, const ControllerState& ctl, const Constellation& c) {
  for (const auto& [id, flow] : ctl.flows()) {
    const auto edges = path_edges(flow.path, c);
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) return true;
  }
  return false;
}

bool installs(Scheme scheme, const RoutingOutcome& out) {
  if (!out.feasible || out.path.hops.size() < 2) return false;
  if (scheme == Scheme::FybrrLink || scheme == Scheme::SwayYenK) return out.status != RoutingStatus::Unsatisfiable;
  return true;
}

class Simulation {
 public:
  Simulation(const Scenario& sc, Scheme scheme, bool parallel)
      : sc_(sc),
        scheme_(scheme),
        parallel_(parallel),
        c_(std::make_shared<const Constellation>(build_constellation(sc.constellation))),
        net_(initial_network(sc, c_)),
        ctl_(*c_) {
    report_.scheme = scheme;
    for (const auto& es : net_.edges()) report_.initial_load_gbps.push_back(es.metrics.load_gbps);
    for (SatelliteId s = 0; s < c_->size(); ++s) last_ping_[s] = 0.0;
    heartbeat_every_ = std::max(1, static_cast<int>(std::llround(sc.heartbeat_period_s)));
  }

  MetricsReport run(const std::vector<FlowRequest>& workload) {
    std::size_t next = 0;
    for (int tick = 0; tick < sc_.duration_s; ++tick) {
      net_.set_tick(tick);
      if (tick > 0) refresh(tick);
      apply_events(tick);
      if (tick % heartbeat_every_ == 0) heartbeat(tick);
      handover();
      while (next < workload.size() && workload[next].arrival_time <= tick) admit(workload[next++], tick);
      if (scheme_ == Scheme::FybrrLink && sc_.routing.congestion_monitor) monitor(tick);
      clear_marks(tick);
      report_.ticks.push_back({tick, mean_cd(), static_cast<int>(ctl_.flows().size())});
    }
    while (next < workload.size()) admit(workload[next++], sc_.duration_s);
    for (const auto& es : net_.edges()) {
      report_.final_load_gbps.push_back(es.metrics.load_gbps);
      report_.final_failed.push_back(es.failed ? 1 : 0);
    }
    report_.final_flows = ctl_.flows();
    return std::move(report_);
  }

 private:
  void refresh(int tick) {
    const kernels::TrafficModel traffic{sc_.links.packets_per_gbps};
    if (parallel_) {
      kernels::omp::refresh_links(*c_, net_.edges(), tick, traffic);
    } else {
      kernels::serial::refresh_links(*c_, net_.edges(), tick, traffic);
    }
  }

  double mean_cd() const {
    return parallel_ ? kernels::omp::mean_congestion(net_.edges()) : kernels::serial::mean_congestion(net_.edges());
  }

  void apply_events(int tick) {
    for (const auto& ev : sc_.events) {
      if (ev.tick != tick) continue;
      switch (ev.kind) {
        case EventKind::FailIsl:
          net_.edge(edge_or_throw(ev.a, ev.b)).down = true;
          break;
        case EventKind::FailSatellite:
          net_.set_satellite_down(ev.satellite, true);
          break;
        case EventKind::CongestIsl:
          net_.edge(edge_or_throw(ev.a, ev.b)).metrics.load_gbps += ev.extra_load_gbps;
          break;
      }
    }
  }

  EdgeId edge_or_throw(GridCoord a, GridCoord b) const {
    const auto e = net_.edge_between(a, b);
    if (!e) throw ConfigError("event refers to satellites that are not adjacent");
    return *e;
  }

  void heartbeat(int tick) {
    const double t = tick;
    const int state = net_.topology_state();
    for (SatelliteId s = 0; s < c_->size(); ++s) {
      const auto msg = send_ping(s, net_, t);
      if (!msg) continue;
      if (last_ping_.contains(s)) last_ping_[s] = t;
      TopologyVerdict v = process_ping(*msg, *c_, t);
      if (v.kind != TopologyVerdict::Kind::IslFailure) continue;
      bool fresh = false;
      for (const auto& [a, b] : v.missing) {
        fresh |= fail_edge(c_->position_of(a, state), c_->position_of(b, state), tick);
      }
      if (fresh) report_.verdicts.push_back({tick, std::move(v)});
    }
    for (SatelliteId s : detect_silent_satellites(t, last_ping_, sc_.heartbeat_period_s)) {
      last_ping_.erase(s);
      const GridCoord pos = c_->position_of(s, state);
      for (const Neighbor& nb : neighbors(pos, *c_)) fail_edge(pos, nb.coord, tick);
      TopologyVerdict v;
      v.kind = TopologyVerdict::Kind::SatelliteFailure;
      v.satellite = s;
      report_.verdicts.push_back({tick, std::move(v)});
    }
  }

  // Returns false if the link was already known failed.
  bool fail_edge(GridCoord a, GridCoord b, int tick) {
    const EdgeId e = *net_.edge_between(a, b);
    if (net_.edge(e).failed) return false;
    const MarkOutcome out = mark_link(net_, ctl_, a, b, MarkReason::Failed, reroute_fn());
    log_reroutes(out, tick);
    return true;
  }

  void handover() {
    const int state = net_.topology_state();
    while (ctl_.state() != state) {
      transfer_flow_rules(*c_, ctl_);
      ctl_.advance_state();
    }
  }

  RerouteFn reroute_fn() {
    return [this](const InstalledFlow& flow, const NetworkView& net) -> std::optional<GridPath> {
      try {
        RoutingOutcome out = route_with(scheme_, flow.request, net, sc_.routing);
        if (out.feasible && out.path.hops.size() >= 2) return std::move(out.path);
      } catch (const std::exception&) {
      }
      return std::nullopt;
    };
  }

  void log_route(FlowId id, const GridPath& path, int tick, bool reroute) {
    report_.routes.push_back({seq_++, tick, id, reroute, path_edges(path, *c_)});
  }

  void log_reroutes(const MarkOutcome& out, int tick) {
    for (FlowId id : out.rerouted) log_route(id, ctl_.flows().at(id).path, tick, true);
  }

  void admit(const FlowRequest& f, int tick) {
    FlowRecord rec;
    rec.flow_id = f.flow_id;
    rec.arrival_s = f.arrival_time;
    rec.src = f.src;
    rec.dst = f.dst;
    rec.qos_enabled = f.constraints.qos_enabled;

    RoutingOutcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      out = route_with(scheme_, f, net_, sc_.routing);
    } catch (const std::exception&) {
      out = RoutingOutcome{};
      out.status = f.constraints.qos_enabled ? RoutingStatus::Unsatisfiable : RoutingStatus::NonQos;
    }
    const auto stop = std::chrono::steady_clock::now();
    rec.routing_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rec.status = out.status;
    rec.iterations_used = out.iterations_used;

    if (installs(scheme_, out)) {
      rec.installed = true;
      rec.hops = out.path.hop_count();
      rec.latency_ms = path_latency_ms(out.path, net_);
      rec.plr = path_plr(out.path, net_);
      apply_flow_load(out.path, f.demand_gbps, net_);
      update_flow_table(f.flow_id, out.path, ctl_);
      log_route(f.flow_id, out.path, tick, false);
      ctl_.flows()[f.flow_id] = InstalledFlow{f, std::move(out.path)};
    }
    rec.satisfied =
        rec.status == RoutingStatus::NonQos || (rec.status == RoutingStatus::Satisfied && rec.installed);
    report_.flows.push_back(rec);
  }

  void monitor(int tick) {
    const double threshold = net_.cd_threshold();
    const auto candidates = parallel_ ? kernels::omp::congested_edges(net_.edges(), threshold)
                                      : kernels::serial::congested_edges(net_.edges(), threshold);
    for (EdgeId e : candidates) {
      const EdgeState& es = net_.edge(e);
      if (es.congested_mark || es.failed || congestion_degree(es.metrics) <= threshold) continue;
      if (!carries_flow(e, ctl_, *c_)) continue;
      const auto [a, b] = c_->edge_endpoints(e);
      report_.marks.push_back({seq_++, tick, e, true});
      const MarkOutcome out = mark_link(net_, ctl_, a, b, MarkReason::Congested, reroute_fn());
      log_reroutes(out, tick);
    }
  }

  void clear_marks(int tick) {
    for (EdgeId e = 0; e < net_.num_edges(); ++e) {
      EdgeState& es = net_.edge(e);
      if (!es.congested_mark || congestion_degree(es.metrics) > net_.cd_threshold()) continue;
      es.congested_mark = false;
      report_.marks.push_back({seq_++, tick, e, false});
    }
  }

  const Scenario& sc_;
  Scheme scheme_;
  bool parallel_;
  std::shared_ptr<const Constellation> c_;
  NetworkView net_;
  ControllerState ctl_;
  MetricsReport report_;
  std::map<SatelliteId, double> last_ping_;
  int heartbeat_every_ = 1;
  std::int64_t seq_ = 0;
};

}  // namespace

void Scenario::validate() const {
  if (duration_s < 0) throw ConfigError("duration_s must be >= 0");
  if (!(heartbeat_period_s > 0.0)) throw ConfigError("heartbeat_period_s must be > 0");
  if (!(routing.max_cd > 0.0 && routing.max_cd < 1.0)) throw ConfigError("routing.max_cd must be in (0, 1)");
  if (!(routing.delta_cd > 0.0)) throw ConfigError("routing.delta_cd must be > 0");
  if (routing.sway_k < 1) throw ConfigError("routing.sway_k must be >= 1");
  if (routing.sdra_max_paths < 1) throw ConfigError("routing.sdra_max_paths must be >= 1");
  if (routing.routers.empty()) throw ConfigError("routing.routers must not be empty");
  try {
    routing.weights.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("routing.weights: ") + e.what());
  }
  if (workload.n_flows < 0) throw ConfigError("workload.n_flows must be >= 0");
  if (!(workload.qos_fraction >= 0.0 && workload.qos_fraction <= 1.0)) {
    throw ConfigError("workload.qos_fraction must be in [0, 1]");
  }
  check_range(workload.qos_bandwidth_gbps, 0.0, kInf, "workload.qos_bandwidth_gbps");
  check_range(workload.nonqos_demand_gbps, 0.0, kInf, "workload.nonqos_demand_gbps");
  check_range(workload.max_delay_ms, 0.0, kInf, "workload.max_delay_ms");
  check_range(workload.max_jitter_ms, 0.0, kInf, "workload.max_jitter_ms");
  check_range(workload.max_plr, 0.0, 1.0, "workload.max_plr");
  if (!(links.intra_bandwidth_gbps > 0.0)) throw ConfigError("links.intra_bandwidth_gbps must be > 0");
  if (!(links.inter_bandwidth_gbps.lo > 0.0)) throw ConfigError("links.inter_bandwidth_gbps must be > 0");
  check_range(links.inter_bandwidth_gbps, 0.0, kInf, "links.inter_bandwidth_gbps");
  check_range(links.initial_cd, 0.0, 1.0, "links.initial_cd");
  check_range(links.initial_plr, 0.0, 1.0, "links.initial_plr");
  if (!(links.cd_threshold > 0.0 && links.cd_threshold <= 1.0)) {
    throw ConfigError("links.cd_threshold must be in (0, 1]");
  }
  if (!(links.packets_per_gbps > 0.0)) throw ConfigError("links.packets_per_gbps must be > 0");
  const Constellation c = build_constellation(constellation);
  if (workload.n_flows > duration_s) throw ConfigError("duration_s must cover the last flow arrival");
  for (const auto& ev : events) {
    if (ev.tick < 0 || ev.tick >= std::max(duration_s, 1)) throw ConfigError("event tick outside the run");
    if (ev.kind == EventKind::FailSatellite) {
      if (ev.satellite < 0 || ev.satellite >= c.size()) throw ConfigError("event satellite out of range");
    } else if (!c.contains(ev.a) || !c.contains(ev.b) || !c.edge_between(ev.a, ev.b)) {
      throw ConfigError("event link endpoints are not adjacent");
    }
  }
}

std::vector<FlowRequest> generate_workload(std::uint64_t seed, const WorkloadConfig& cfg, int satellites) {
  if (cfg.n_flows < 1) throw std::invalid_argument("generate_workload: n_flows must be >= 1");
  if (satellites < 2) throw std::invalid_argument("generate_workload: need at least two satellites");
  auto rng = substream(seed, "workload");
  const int n = cfg.n_flows;
  const auto n_qos = static_cast<int>(std::lround(cfg.qos_fraction * n));
  std::vector<char> qos(static_cast<std::size_t>(n), 0);
  std::fill_n(qos.begin(), n_qos, 1);
  std::shuffle(qos.begin(), qos.end(), rng);

  std::vector<FlowRequest> flows;
  flows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    FlowRequest f;
    f.flow_id = i;
    f.arrival_time = i;
    f.src = std::uniform_int_distribution<SatelliteId>(0, satellites - 1)(rng);
    f.dst = std::uniform_int_distribution<SatelliteId>(0, satellites - 2)(rng);
    if (f.dst >= f.src) ++f.dst;
    if (qos[static_cast<std::size_t>(i)]) {
      f.constraints.qos_enabled = true;
      f.constraints.min_bandwidth_gbps = draw(rng, cfg.qos_bandwidth_gbps);
      f.constraints.max_delay_ms = draw(rng, cfg.max_delay_ms);
      f.constraints.max_jitter_ms = draw(rng, cfg.max_jitter_ms);
      f.constraints.max_plr = draw(rng, cfg.max_plr);
      f.demand_gbps = f.constraints.min_bandwidth_gbps;
    } else {
      f.demand_gbps = draw(rng, cfg.nonqos_demand_gbps);
    }
    flows.push_back(f);
  }
  return flows;
}

NetworkView initial_network(const Scenario& sc, std::shared_ptr<const Constellation> c) {
  auto rng = substream(sc.seed, "link-init");
  std::vector<LinkMetrics> metrics;
  metrics.reserve(static_cast<std::size_t>(c->num_edges()));
  for (EdgeId e = 0; e < c->num_edges(); ++e) {
    const auto [a, b] = c->edge_endpoints(e);
    const bool intra = c->edge_kind(e) == IslKind::IntraOrbit;
    LinkMetrics m;
    m.bandwidth_gbps = intra ? sc.links.intra_bandwidth_gbps : draw(rng, sc.links.inter_bandwidth_gbps);
    m.load_gbps = draw(rng, sc.links.initial_cd) * m.bandwidth_gbps;
    m.initial_plr = draw(rng, sc.links.initial_plr);
    m.packets_tx = sc.links.seed_packets;
    const auto lost = static_cast<std::uint64_t>(std::llround(static_cast<double>(m.packets_tx) * m.initial_plr));
    m.packets_rx = m.packets_tx - std::min(lost, m.packets_tx);
    m.stability_flag = intra ? 1 : 0;
    m.distance_km = inter_satellite_distance(a, b, *c, 0.0);
    m.latency = LatencySeries(0);
    m.latency.push(propagation_delay_ms(m.distance_km));
    metrics.push_back(std::move(m));
  }
  return NetworkView(std::move(c), std::move(metrics), sc.links.cd_threshold);
}

RoutingOutcome route_with(Scheme scheme, const FlowRequest& f, const NetworkView& net, const RoutingConfig& cfg) {
  switch (scheme) {
    case Scheme::FybrrLink:
      return route_flow(f, net, RouterParams{cfg.weights, cfg.max_cd, cfg.delta_cd});
    case Scheme::GlobalDijkstra:
      return global_dijkstra(f, net);
    case Scheme::SwayYenK:
      return sway_yen_k(f, net, cfg.sway_k);
    case Scheme::SdraDfs:
      return sdra_dfs(f, net, cfg.sdra_max_paths);
  }
  throw std::invalid_argument("route_with: unknown scheme");
}

MetricsReport run(const Scenario& sc, Scheme scheme, const std::vector<FlowRequest>& workload,
                  bool parallel_kernels) {
  sc.validate();
  Simulation sim(sc, scheme, parallel_kernels);
  return sim.run(workload);
}

MetricsReport run(const Scenario& sc, Scheme scheme) {
  std::vector<FlowRequest> workload;
  if (sc.workload.n_flows > 0) {
    const Constellation c = build_constellation(sc.constellation);
    workload = generate_workload(sc.seed, sc.workload, c.size());
  }
  return run(sc, scheme, workload);
}

std::optional<double> satisfaction_ratio(const MetricsReport& r) {
  if (r.flows.empty()) return std::nullopt;
  const auto ok = std::count_if(r.flows.begin(), r.flows.end(), [](const FlowRecord& f) { return f.satisfied; });
  return static_cast<double>(ok) / static_cast<double>(r.flows.size());
}

Summary summarize(const MetricsReport& r) {
  Summary s;
  s.scheme = r.scheme;
  s.flows = static_cast<int>(r.flows.size());
  s.satisfaction_ratio = satisfaction_ratio(r);
  std::vector<double> times;
  double latency = 0.0, plr = 0.0;
  for (const auto& f : r.flows) {
    times.push_back(f.routing_time_ms);
    s.satisfied += f.satisfied ? 1 : 0;
    if (!f.installed) continue;
    ++s.installed;
    latency += f.latency_ms;
    plr += f.plr;
  }
  if (!times.empty()) {
    s.mean_routing_time_ms = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    s.median_routing_time_ms = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  }
  if (s.installed > 0) {
    s.mean_latency_ms = latency / s.installed;
    s.mean_plr = plr / s.installed;
  }
  if (!r.ticks.empty()) {
    double cd = 0.0;
    for (const auto& t : r.ticks) cd += t.avg_cd;
    s.mean_avg_cd = cd / static_cast<double>(r.ticks.size());
  }
  return s;
}

std::vector<AuditViolation> audit_congestion_avoidance(const MetricsReport& r) {
  std::vector<AuditViolation> out;
  std::set<EdgeId> marked;
  std::size_t m = 0;
  for (const auto& route : r.routes) {
    while (m < r.marks.size() && r.marks[m].seq < route.seq) {
      if (r.marks[m].marked) {
        marked.insert(r.marks[m].edge);
      } else {
        marked.erase(r.marks[m].edge);
      }
      ++m;
    }
    for (EdgeId e : route.edges) {
      if (marked.contains(e)) out.push_back({route.seq, route.flow, e});
    }
  }
  return out;
}

}  // namespace leoroute
