#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/control_plane.hpp"
#include "leoroute/flow.hpp"
#include "leoroute/kernels.hpp"
#include "leoroute/link_state.hpp"
#include "leoroute/network.hpp"
#include "leoroute/router.hpp"

namespace leoroute {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct LinkInit {
  double intra_bandwidth_gbps = 4.16;
  Range inter_bandwidth_gbps{3.10, 3.70};
  Range initial_cd{0.60, 0.80};
  Range initial_plr{0.0001, 0.002};
  double cd_threshold = kDefaultCdThreshold;
  /// Packets already counted on each link at t = 0, so the initial PLR is
  /// what the counters report.
  std::uint64_t seed_packets = 1'000'000;
  double packets_per_gbps = 1e5;

  friend bool operator==(const LinkInit&, const LinkInit&) = default;
};

struct RoutingConfig {
  ScoreWeights weights;
  double max_cd = 0.82;
  double delta_cd = 0.05;
  std::vector<Scheme> routers{Scheme::FybrrLink, Scheme::GlobalDijkstra, Scheme::SwayYenK, Scheme::SdraDfs};
  int sway_k = 4;
  int sdra_max_paths = 10000;
  /// Mark links that cross the CD threshold and move flows off them
  /// (fybrrLink runs only).
  bool congestion_monitor = true;

  friend bool operator==(const RoutingConfig&, const RoutingConfig&) = default;
};

struct WorkloadConfig {
  int n_flows = 324;
  double qos_fraction = 280.0 / 324.0;
  Range qos_bandwidth_gbps{0.1, 0.5};
  Range nonqos_demand_gbps{0.05, 0.2};
  Range max_delay_ms{40.0, 120.0};
  Range max_jitter_ms{1000.0, 1000.0};
  Range max_plr{0.003, 0.01};

  friend bool operator==(const WorkloadConfig&, const WorkloadConfig&) = default;
};

enum class EventKind { FailIsl, FailSatellite, CongestIsl };

/// Something that happens to the physical network at a given tick.
struct ScheduledEvent {
  int tick = 0;
  EventKind kind = EventKind::FailIsl;
  GridCoord a;                // FailIsl, CongestIsl
  GridCoord b;                // FailIsl, CongestIsl
  SatelliteId satellite = 0;  // FailSatellite
  double extra_load_gbps = 0.0;

  friend bool operator==(const ScheduledEvent&, const ScheduledEvent&) = default;
};

struct OutputConfig {
  std::string directory = "out";
  int window_s = 50;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct Scenario {
  std::uint64_t seed = 1;
  ConstellationConfig constellation;
  LinkInit links;
  RoutingConfig routing;
  WorkloadConfig workload;
  int duration_s = 324;
  double heartbeat_period_s = 1.0;
  std::vector<ScheduledEvent> events;
  OutputConfig output;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct FlowRecord {
  FlowId flow_id = 0;
  int arrival_s = 0;
  SatelliteId src = 0;
  SatelliteId dst = 0;
  bool qos_enabled = false;
  RoutingStatus status = RoutingStatus::Unsatisfiable;
  bool installed = false;
  bool satisfied = false;
  int hops = 0;
  int iterations_used = 0;
  double routing_time_ms = 0.0;
  double latency_ms = 0.0;  // installed flows only
  double plr = 0.0;         // installed flows only
};

struct TickRecord {
  int t_s = 0;
  double avg_cd = 0.0;
  int flows_active = 0;
};

struct VerdictRecord {
  int tick = 0;
  TopologyVerdict verdict;
};

/// A path being (re)installed. `seq` orders it against marks.
struct RouteLogEntry {
  std::int64_t seq = 0;
  int tick = 0;
  FlowId flow = 0;
  bool reroute = false;
  std::vector<EdgeId> edges;
};

struct MarkLogEntry {
  std::int64_t seq = 0;
  int tick = 0;
  EdgeId edge = 0;
  bool marked = true;  // false: mark cleared
};

struct MetricsReport {
  Scheme scheme = Scheme::FybrrLink;
  std::vector<FlowRecord> flows;
  std::vector<TickRecord> ticks;
  std::vector<VerdictRecord> verdicts;
  std::vector<RouteLogEntry> routes;
  std::vector<MarkLogEntry> marks;
  std::vector<double> initial_load_gbps;
  std::vector<double> final_load_gbps;
  std::vector<char> final_failed;
  std::map<FlowId, InstalledFlow> final_flows;
};

/// Flows arriving one per second from t = 0, drawn from the "workload"
/// sub-stream of `seed`.
std::vector<FlowRequest> generate_workload(std::uint64_t seed, const WorkloadConfig& cfg, int satellites = 100);

/// Link metrics at t = 0 drawn from the "link-init" sub-stream of `seed`.
NetworkView initial_network(const Scenario& sc, std::shared_ptr<const Constellation> c);

/// Dispatches one flow to the scheme's router.
RoutingOutcome route_with(Scheme scheme, const FlowRequest& f, const NetworkView& net, const RoutingConfig& cfg);

/// Runs the workload through one router. Kernel selection only changes
/// speed, never results.
MetricsReport run(const Scenario& sc, Scheme scheme, const std::vector<FlowRequest>& workload,
                  bool parallel_kernels = true);
MetricsReport run(const Scenario& sc, Scheme scheme);

/// nullopt when there are no flows.
std::optional<double> satisfaction_ratio(const MetricsReport& r);

struct Summary {
  Scheme scheme = Scheme::FybrrLink;
  int flows = 0;
  int satisfied = 0;
  int installed = 0;
  double mean_routing_time_ms = 0.0;
  double median_routing_time_ms = 0.0;
  double mean_latency_ms = 0.0;  // over installed flows
  double mean_plr = 0.0;         // over installed flows
  double mean_avg_cd = 0.0;      // over ticks
  std::optional<double> satisfaction_ratio;
};

Summary summarize(const MetricsReport& r);

struct AuditViolation {
  std::int64_t route_seq = 0;
  FlowId flow = 0;
  EdgeId edge = 0;
};

/// Every logged route that uses a link while it is marked congested.
std::vector<AuditViolation> audit_congestion_avoidance(const MetricsReport& r);

}  // namespace leoroute
