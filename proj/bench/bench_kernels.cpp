#include <benchmark/benchmark.h>

#include <random>

#include "leoroute/kernels.hpp"
#include "leoroute/sim_engine.hpp"

using namespace leoroute;

namespace {

NetworkView make_net(int side) {
  Scenario sc;
  sc.constellation.num_orbits = side;
  sc.constellation.sats_per_orbit = side;
  auto c = std::make_shared<const Constellation>(build_constellation(sc.constellation));
  return initial_network(sc, std::move(c));
}

template <auto Refresh>
void refresh(benchmark::State& state) {
  NetworkView net = make_net(static_cast<int>(state.range(0)));
  const kernels::TrafficModel traffic;
  double t = 1.0;
  for (auto _ : state) {
    Refresh(net.constellation(), net.edges(), t, traffic);
    t += 1.0;
  }
  state.SetItemsProcessed(state.iterations() * net.num_edges());
}

template <auto Mean>
void mean_cd(benchmark::State& state) {
  const NetworkView net = make_net(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Mean(net.edges()));
  state.SetItemsProcessed(state.iterations() * net.num_edges());
}

template <auto Scan>
void congested(benchmark::State& state) {
  const NetworkView net = make_net(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Scan(net.edges(), 0.75));
  state.SetItemsProcessed(state.iterations() * net.num_edges());
}

}  // namespace

BENCHMARK(refresh<kernels::serial::refresh_links>)->Name("refresh/serial")->Arg(10)->Arg(40)->Arg(120);
BENCHMARK(refresh<kernels::omp::refresh_links>)->Name("refresh/omp")->Arg(10)->Arg(40)->Arg(120);
BENCHMARK(mean_cd<kernels::serial::mean_congestion>)->Name("mean_cd/serial")->Arg(10)->Arg(40)->Arg(120);
BENCHMARK(mean_cd<kernels::omp::mean_congestion>)->Name("mean_cd/omp")->Arg(10)->Arg(40)->Arg(120);
BENCHMARK(congested<kernels::serial::congested_edges>)->Name("congested/serial")->Arg(10)->Arg(40)->Arg(120);
BENCHMARK(congested<kernels::omp::congested_edges>)->Name("congested/omp")->Arg(10)->Arg(40)->Arg(120);

BENCHMARK_MAIN();
