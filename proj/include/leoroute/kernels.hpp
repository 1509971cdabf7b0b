#pragma once

#include <span>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/network.hpp"

// Per-tick link-state kernels. `serial` is the reference; `omp` must give
// bit-identical results (reductions are summed in edge order).
namespace leoroute::kernels {

struct TrafficModel {
  /// Packets offered per tick for one Gbps of load.
  double packets_per_gbps = 1e5;
};

/// Fraction of offered packets a link drops: its base loss, plus whatever
/// exceeds capacity when load > bandwidth.
double offered_loss(const LinkMetrics& m);

namespace serial {

/// Re-measures every ISL at time t: distance and latency sample from the
/// current geometry, and packet counters from the current load. Physically
/// down links carry nothing.
void refresh_links(const Constellation& c, std::span<EdgeState> edges, double t, const TrafficModel& traffic);

/// Mean CD over non-failed links.
double mean_congestion(std::span<const EdgeState> edges);

/// Non-failed, unmarked links with CD above `threshold`, ascending.
std::vector<EdgeId> congested_edges(std::span<const EdgeState> edges, double threshold);

}  // namespace serial

namespace omp {

void refresh_links(const Constellation& c, std::span<EdgeState> edges, double t, const TrafficModel& traffic);
double mean_congestion(std::span<const EdgeState> edges);
std::vector<EdgeId> congested_edges(std::span<const EdgeState> edges, double threshold);

}  // namespace omp

}  // namespace leoroute::kernels
