#include "leoroute/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "leoroute/router.hpp"

namespace leoroute {

namespace {

struct Endpoints {
  GridCoord src;
  GridCoord dst;
};

Endpoints endpoints(const FlowRequest& f, const NetworkView& net) {
  const Constellation& c = net.constellation();
  if (f.src < 0 || f.dst < 0 || f.src >= c.size() || f.dst >= c.size()) {
    throw std::invalid_argument("unknown satellite id");
  }
  const int state = net.topology_state();
  return {c.position_of(f.src, state), c.position_of(f.dst, state)};
}

GridPath to_grid_path(const std::vector<int>& nodes, const Constellation& c) {
  std::vector<GridCoord> hops;
  hops.reserve(nodes.size());
  for (int v : nodes) hops.push_back(c.coord_at(v));
  return make_path(std::move(hops), c);
}

double mean_cd(const GridPath& p, const NetworkView& net) {
  const auto edges = path_edges(p, net.constellation());
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (EdgeId e : edges) sum += net.congestion(e);
  return sum / static_cast<double>(edges.size());
}

bool congested(EdgeId e, const NetworkView& net) {
  return net.edge(e).congested_mark || net.congestion(e) > net.cd_threshold();
}

void finish(RoutingOutcome& out, const FlowRequest& f, const NetworkView& net) {
  out.feasible = !out.path.empty() && path_usable(out.path, net);
  if (!f.constraints.qos_enabled) {
    out.status = RoutingStatus::NonQos;
  } else {
    out.status = out.feasible && is_satisfying_path(out.path, f.constraints, net) ? RoutingStatus::Satisfied
                                                                                 : RoutingStatus::Unsatisfiable;
  }
}

}  // namespace

GlobalGraph build_global_graph(const NetworkView& net, const std::vector<double>& weight) {
  const Constellation& c = net.constellation();
  GlobalGraph g{graph::Digraph(c.size()), std::vector<int>(static_cast<std::size_t>(c.size()))};
  for (int v = 0; v < c.size(); ++v) g.keys[static_cast<std::size_t>(v)] = v;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    if (net.edge(e).failed) continue;
    const auto [a, b] = c.edge_endpoints(e);
    g.graph.add_edge(c.index(a), c.index(b), weight[static_cast<std::size_t>(e)]);
  }
  return g;
}

RoutingOutcome global_dijkstra(const FlowRequest& f, const NetworkView& net) {
  const auto [src, dst] = endpoints(f, net);
  const Constellation& c = net.constellation();
  std::vector<double> weight(static_cast<std::size_t>(net.num_edges()));
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    weight[static_cast<std::size_t>(e)] = congested(e, net) ? kMaxCost : net.latency_ms(e);
  }
  const GlobalGraph g = build_global_graph(net, weight);
  RoutingOutcome out;
  if (auto p = graph::shortest_path(g.graph, c.index(src), c.index(dst), g.keys)) {
    out.path = to_grid_path(p->nodes, c);
    out.iterations_used = 1;
    finish(out, f, net);
    if (p->cost >= kMaxCost) out.feasible = false;
  }
  if (!out.feasible && f.constraints.qos_enabled) out.status = RoutingStatus::Unsatisfiable;
  return out;
}

RoutingOutcome sway_yen_k(const FlowRequest& f, const NetworkView& net, int k) {
  if (k < 1) throw std::invalid_argument("sway_yen_k: k must be >= 1");
  const auto [src, dst] = endpoints(f, net);
  const Constellation& c = net.constellation();
  std::vector<double> weight(static_cast<std::size_t>(net.num_edges()));
  for (EdgeId e = 0; e < net.num_edges(); ++e) weight[static_cast<std::size_t>(e)] = net.latency_ms(e);
  const GlobalGraph g = build_global_graph(net, weight);
  const auto paths = graph::k_shortest_paths(g.graph, c.index(src), c.index(dst), k, g.keys);

  RoutingOutcome out;
  out.iterations_used = static_cast<int>(paths.size());
  if (paths.empty()) {
    finish(out, f, net);
    return out;
  }
  const GridPath* best = nullptr;
  double best_cd = std::numeric_limits<double>::infinity();
  std::vector<GridPath> grid_paths;
  grid_paths.reserve(paths.size());
  for (const auto& p : paths) grid_paths.push_back(to_grid_path(p.nodes, c));
  for (const auto& p : grid_paths) {
    if (f.constraints.qos_enabled && !is_satisfying_path(p, f.constraints, net)) continue;
    const double cd = mean_cd(p, net);
    if (cd < best_cd) {
      best = &p;
      best_cd = cd;
    }
  }
  out.path = best != nullptr ? *best : grid_paths.front();
  finish(out, f, net);
  return out;
}

RoutingOutcome sdra_dfs(const FlowRequest& f, const NetworkView& net, int max_paths) {
  if (max_paths < 1) throw std::invalid_argument("sdra_dfs: max_paths must be >= 1");
  const auto [src, dst] = endpoints(f, net);
  const Constellation& c = net.constellation();
  const int P = c.num_orbits();
  const int S = c.sats_per_orbit();
  const int bound = 2 * grid_distance(src, dst, P, S);

  std::vector<char> on_path(static_cast<std::size_t>(c.size()), 0);
  std::vector<GridCoord> stack{src};
  on_path[static_cast<std::size_t>(c.index(src))] = 1;
  std::vector<GridCoord> best;
  double best_latency = std::numeric_limits<double>::infinity();
  int found = 0;

  auto dfs = [&](auto&& self, GridCoord cur, double latency) -> void {
    if (found >= max_paths) return;
    if (cur == dst) {
      ++found;
      if (latency < best_latency) {
        best_latency = latency;
        best = stack;
      }
      return;
    }
    const int depth = static_cast<int>(stack.size()) - 1;
    for (const Neighbor& nb : neighbors(cur, c)) {
      if (found >= max_paths) return;
      auto& mark = on_path[static_cast<std::size_t>(c.index(nb.coord))];
      if (mark) continue;
      if (depth + 1 + grid_distance(nb.coord, dst, P, S) > bound) continue;
      const EdgeId e = *c.edge_between(cur, nb.coord);
      if (net.edge(e).failed || congested(e, net)) continue;
      mark = 1;
      stack.push_back(nb.coord);
      self(self, nb.coord, latency + net.latency_ms(e));
      stack.pop_back();
      mark = 0;
    }
  };
  dfs(dfs, src, 0.0);

  RoutingOutcome out;
  out.iterations_used = found;
  if (!best.empty()) out.path = make_path(std::move(best), c);
  finish(out, f, net);
  return out;
}

}  // namespace leoroute
