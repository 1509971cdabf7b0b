#pragma once

#include <memory>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/network.hpp"

namespace fixture {

using namespace leoroute;

inline std::shared_ptr<const Constellation> grid(int P = 10, int S = 10) {
  ConstellationConfig cfg;
  cfg.num_orbits = P;
  cfg.sats_per_orbit = S;
  return std::make_shared<const Constellation>(build_constellation(cfg));
}

/// Every link: bandwidth 4, CD `cd`, PLR `plr`, latency from geometry at t=0.
inline NetworkView uniform_net(std::shared_ptr<const Constellation> c, double cd = 0.5, double plr = 0.001) {
  std::vector<LinkMetrics> metrics;
  for (EdgeId e = 0; e < c->num_edges(); ++e) {
    const auto [a, b] = c->edge_endpoints(e);
    LinkMetrics m;
    m.bandwidth_gbps = 4.0;
    m.load_gbps = cd * 4.0;
    m.packets_tx = 1'000'000;
    m.packets_rx = m.packets_tx - static_cast<std::uint64_t>(plr * 1e6);
    m.distance_km = inter_satellite_distance(a, b, *c, 0.0);
    m.latency.push(propagation_delay_ms(m.distance_km));
    m.stability_flag = a.orbit == b.orbit ? 1 : 0;
    metrics.push_back(std::move(m));
  }
  return NetworkView(std::move(c), std::move(metrics));
}

inline void set_cd(NetworkView& net, GridCoord a, GridCoord b, double cd) {
  auto& m = net.edge(*net.edge_between(a, b)).metrics;
  m.load_gbps = cd * m.bandwidth_gbps;
}

}  // namespace fixture
