#include "leoroute/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace leoroute::kernels {

namespace {

void refresh_one(const Constellation& c, EdgeId e, EdgeState& es, double t, const TrafficModel& traffic) {
  const auto [a, b] = c.edge_endpoints(e);
  LinkMetrics& m = es.metrics;
  m.distance_km = inter_satellite_distance(a, b, c, t);
  m.latency.push(propagation_delay_ms(m.distance_km));
  if (es.down) return;
  const auto offered = static_cast<std::uint64_t>(std::llround(m.load_gbps * traffic.packets_per_gbps));
  const auto lost = static_cast<std::uint64_t>(std::llround(static_cast<double>(offered) * offered_loss(m)));
  m.packets_tx += offered;
  m.packets_rx += offered - std::min(lost, offered);
}

bool counted(const EdgeState& es) { return !es.failed; }

bool over(const EdgeState& es, double threshold) {
  return !es.failed && !es.congested_mark && congestion_degree(es.metrics) > threshold;
}

}  // namespace

double offered_loss(const LinkMetrics& m) {
  const double base = m.initial_plr;
  if (m.load_gbps <= m.bandwidth_gbps) return base;
  return 1.0 - (1.0 - base) * (m.bandwidth_gbps / m.load_gbps);
}

namespace serial {

void refresh_links(const Constellation& c, std::span<EdgeState> edges, double t, const TrafficModel& traffic) {
  for (std::size_t e = 0; e < edges.size(); ++e) refresh_one(c, static_cast<EdgeId>(e), edges[e], t, traffic);
}

double mean_congestion(std::span<const EdgeState> edges) {
  double sum = 0.0;
  int count = 0;
  for (const auto& es : edges) {
    if (!counted(es)) continue;
    sum += congestion_degree(es.metrics);
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

std::vector<EdgeId> congested_edges(std::span<const EdgeState> edges, double threshold) {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (over(edges[e], threshold)) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

}  // namespace serial

namespace omp {

void refresh_links(const Constellation& c, std::span<EdgeState> edges, double t, const TrafficModel& traffic) {
  const auto n = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < n; ++e) {
    refresh_one(c, static_cast<EdgeId>(e), edges[static_cast<std::size_t>(e)], t, traffic);
  }
}

double mean_congestion(std::span<const EdgeState> edges) {
  const auto n = static_cast<std::int64_t>(edges.size());
  std::vector<double> cd(edges.size(), 0.0);
  std::vector<char> live(edges.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < n; ++e) {
    const auto& es = edges[static_cast<std::size_t>(e)];
    if (!counted(es)) continue;
    live[static_cast<std::size_t>(e)] = 1;
    cd[static_cast<std::size_t>(e)] = congestion_degree(es.metrics);
  }
  double sum = 0.0;
  int count = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!live[e]) continue;
    sum += cd[e];
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

std::vector<EdgeId> congested_edges(std::span<const EdgeState> edges, double threshold) {
  const auto n = static_cast<std::int64_t>(edges.size());
  std::vector<char> hit(edges.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < n; ++e) {
    hit[static_cast<std::size_t>(e)] = over(edges[static_cast<std::size_t>(e)], threshold) ? 1 : 0;
  }
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (hit[e]) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

}  // namespace omp

}  // namespace leoroute::kernels
