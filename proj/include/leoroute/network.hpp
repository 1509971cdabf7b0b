#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/link_state.hpp"
#include "leoroute/path.hpp"

namespace leoroute {

struct EdgeState {
  LinkMetrics metrics;
  bool failed = false;          // known failed by the controller
  bool congested_mark = false;  // explicitly marked congested by the controller
  bool down = false;            // physically broken (ground truth, seen by pings)
};

/// The controller's view of the network: per-ISL state over the canonical
/// edge index of a Constellation plus satellite liveness.
///
/// Owned by one simulation run; mutated only between event steps.
class NetworkView {
 public:
  NetworkView(std::shared_ptr<const Constellation> constellation, std::vector<LinkMetrics> metrics,
              double cd_threshold = kDefaultCdThreshold);

  const Constellation& constellation() const { return *constellation_; }
  const std::shared_ptr<const Constellation>& constellation_ptr() const { return constellation_; }

  int num_edges() const { return static_cast<int>(edges_.size()); }
  EdgeState& edge(EdgeId e) { return edges_[static_cast<std::size_t>(e)]; }
  const EdgeState& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<EdgeState> edges() { return edges_; }
  std::span<const EdgeState> edges() const { return edges_; }
  std::optional<EdgeId> edge_between(GridCoord a, GridCoord b) const {
    return constellation_->edge_between(a, b);
  }

  double cd_threshold() const { return cd_threshold_; }

  int tick() const { return tick_; }
  void set_tick(int tick) { tick_ = tick; }
  double time_s() const { return static_cast<double>(tick_); }
  int topology_state() const;

  bool satellite_down(SatelliteId id) const { return sat_down_[static_cast<std::size_t>(id)] != 0; }
  void set_satellite_down(SatelliteId id, bool down) { sat_down_[static_cast<std::size_t>(id)] = down; }

  /// Failed or marked congested: never part of a new route.
  bool excluded(EdgeId e) const { return edge(e).failed || edge(e).congested_mark; }
  double congestion(EdgeId e) const { return congestion_degree(edge(e).metrics); }
  double latency_ms(EdgeId e) const { return current_latency_ms(edge(e).metrics); }
  double jitter_ms(EdgeId e) const { return edge(e).metrics.latency.jitter_ms(); }
  double plr(EdgeId e) const { return packet_loss_ratio(edge(e).metrics); }
  double available_bandwidth(EdgeId e) const {
    return excluded(e) ? 0.0 : leoroute::available_bandwidth(edge(e).metrics, cd_threshold_);
  }

  /// Cost used by the QoS router: kMaxCost for excluded links, links with
  /// CD > max_cd, and non-positive scores; 1 / score otherwise. Available
  /// bandwidth inside the score always uses the fixed cd_threshold.
  double edge_cost(EdgeId e, const ScoreWeights& w, double max_cd) const;

 private:
  std::shared_ptr<const Constellation> constellation_;
  std::vector<EdgeState> edges_;
  std::vector<char> sat_down_;
  double cd_threshold_;
  int tick_ = 0;
};

/// Adds demand_gbps to the load of every edge on the path. Negative demand
/// releases load (clamped at zero to absorb rounding).
void apply_flow_load(const GridPath& path, double demand_gbps, NetworkView& net);

/// Mean CD over all non-failed ISLs.
double average_congestion(const NetworkView& net);

/// Sum of per-edge latency along the path, in ms.
double path_latency_ms(const GridPath& path, const NetworkView& net);
/// 1 - prod(1 - PLR) along the path.
double path_plr(const GridPath& path, const NetworkView& net);
/// Sum of edge_cost along the path; kMaxCost or more means infeasible.
double path_cost(const GridPath& path, const NetworkView& net, const ScoreWeights& w, double max_cd);
/// True when no edge on the path is excluded.
bool path_usable(const GridPath& path, const NetworkView& net);

}  // namespace leoroute
