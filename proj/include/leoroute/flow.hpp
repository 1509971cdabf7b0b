#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "leoroute/constellation.hpp"
#include "leoroute/path.hpp"

namespace leoroute {

using FlowId = std::int32_t;

struct FlowConstraints {
  double min_bandwidth_gbps = 0.0;
  double max_delay_ms = std::numeric_limits<double>::infinity();
  double max_jitter_ms = std::numeric_limits<double>::infinity();
  double max_plr = 1.0;
  bool qos_enabled = false;

  friend bool operator==(const FlowConstraints&, const FlowConstraints&) = default;
};

enum class Scheme { FybrrLink, GlobalDijkstra, SwayYenK, SdraDfs };

/// Which router handles a flow, with the baseline parameters.
struct RouterKind {
  Scheme scheme = Scheme::FybrrLink;
  int k = 4;              // SwayYenK
  int max_paths = 10000;  // SdraDfs

  friend bool operator==(const RouterKind&, const RouterKind&) = default;
};

std::string_view scheme_name(Scheme s);
/// Accepts "fybrrlink", "dijkstra", "sway", "sdra". Throws std::invalid_argument.
Scheme parse_scheme(std::string_view name);

struct FlowRequest {
  FlowId flow_id = 0;
  int arrival_time = 0;  // tick (s)
  SatelliteId src = 0;
  SatelliteId dst = 0;
  double demand_gbps = 0.0;
  FlowConstraints constraints;
  RouterKind router;

  friend bool operator==(const FlowRequest&, const FlowRequest&) = default;
};

enum class RoutingStatus { Satisfied, Unsatisfiable, NonQos };

struct RoutingOutcome {
  RoutingStatus status = RoutingStatus::Unsatisfiable;
  GridPath path;          // best path found; may be empty when nothing exists
  bool feasible = false;  // path avoids every excluded / MAX-cost link
  int iterations_used = 0;
  double route_time_ms = 0.0;
};

}  // namespace leoroute
