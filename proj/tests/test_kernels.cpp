#include <doctest.h>

#include <random>

#include "leoroute/kernels.hpp"
#include "net_fixture.hpp"

using namespace leoroute;

namespace {

NetworkView noisy(std::shared_ptr<const Constellation> c, std::uint32_t seed) {
  NetworkView net = fixture::uniform_net(std::move(c));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> cd(0.2, 1.3), plr(0.0, 0.01), u(0.0, 1.0);
  for (auto& es : net.edges()) {
    es.metrics.load_gbps = cd(rng) * es.metrics.bandwidth_gbps;
    es.metrics.initial_plr = plr(rng);
    es.failed = u(rng) < 0.05;
    es.down = es.failed && u(rng) < 0.5;
    es.congested_mark = u(rng) < 0.05;
  }
  return net;
}

bool same(const EdgeState& a, const EdgeState& b) {
  const auto sa = a.metrics.latency.samples(), sb = b.metrics.latency.samples();
  return a.metrics.packets_tx == b.metrics.packets_tx && a.metrics.packets_rx == b.metrics.packets_rx &&
         a.metrics.distance_km == b.metrics.distance_km && std::equal(sa.begin(), sa.end(), sb.begin(), sb.end()) &&
         a.metrics.latency.jitter_ms() == b.metrics.latency.jitter_ms();
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference exactly") {
  const auto c = fixture::grid(40, 40);
  NetworkView a = noisy(c, 17), b = noisy(c, 17);
  const kernels::TrafficModel traffic;
  for (int t = 1; t <= 20; ++t) {
    kernels::serial::refresh_links(*c, a.edges(), t, traffic);
    kernels::omp::refresh_links(*c, b.edges(), t, traffic);
    CHECK(kernels::serial::mean_congestion(a.edges()) == kernels::omp::mean_congestion(b.edges()));
    CHECK(kernels::serial::congested_edges(a.edges(), 0.8) == kernels::omp::congested_edges(b.edges(), 0.8));
  }
  int mismatched = 0;
  for (EdgeId e = 0; e < a.num_edges(); ++e) mismatched += same(a.edge(e), b.edge(e)) ? 0 : 1;
  CHECK(mismatched == 0);
}

TEST_CASE("congested edge scan skips failed and marked links") {
  const auto c = fixture::grid();
  NetworkView net = fixture::uniform_net(c, 0.5);
  fixture::set_cd(net, {0, 0}, {0, 1}, 0.9);
  fixture::set_cd(net, {1, 0}, {1, 1}, 0.9);
  fixture::set_cd(net, {2, 0}, {2, 1}, 0.9);
  net.edge(*c->edge_between({1, 0}, {1, 1})).failed = true;
  net.edge(*c->edge_between({2, 0}, {2, 1})).congested_mark = true;
  CHECK(kernels::serial::congested_edges(net.edges(), 0.8) == std::vector<EdgeId>{*c->edge_between({0, 0}, {0, 1})});
  const double expect = (0.5 * (net.num_edges() - 3) + 0.9 * 2) / (net.num_edges() - 1);
  CHECK(kernels::serial::mean_congestion(net.edges()) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("offered loss") {
  LinkMetrics m;
  m.bandwidth_gbps = 4.0;
  m.initial_plr = 0.001;
  m.load_gbps = 3.0;
  CHECK(kernels::offered_loss(m) == doctest::Approx(0.001));
  m.load_gbps = 5.0;
  CHECK(kernels::offered_loss(m) == doctest::Approx(1.0 - 0.999 * 0.8));
}

TEST_CASE("refresh counts traffic and keeps load") {
  const auto c = fixture::grid();
  NetworkView net = fixture::uniform_net(c, 0.5, 0.0);
  for (auto& es : net.edges()) es.metrics.initial_plr = 0.002;
  net.edge(0).down = true;
  const auto tx0 = net.edge(1).metrics.packets_tx;
  kernels::serial::refresh_links(*c, net.edges(), 1.0, kernels::TrafficModel{1e5});
  CHECK(net.edge(1).metrics.load_gbps == 2.0);
  CHECK(net.edge(1).metrics.packets_tx == tx0 + 200000);
  CHECK(net.edge(1).metrics.packets_rx == tx0 + 200000 - 400);
  CHECK(net.edge(0).metrics.packets_tx == tx0);
  CHECK(net.edge(1).metrics.latency.samples().size() == 2);
}
