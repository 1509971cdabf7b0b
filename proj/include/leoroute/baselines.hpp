#pragma once

#include <vector>

#include "leoroute/flow.hpp"
#include "leoroute/graph.hpp"
#include "leoroute/network.hpp"

namespace leoroute {

/// The whole constellation as a symmetric digraph over position indices.
/// Failed links are left out; `weight[e]` prices canonical edge e.
struct GlobalGraph {
  graph::Digraph graph{0};
  std::vector<int> keys;
};

GlobalGraph build_global_graph(const NetworkView& net, const std::vector<double>& weight);

/// Latency-weighted Dijkstra over every live ISL. Links with CD above the
/// network threshold (or marked congested) cost kMaxCost, so they are only
/// used when nothing else connects the pair; such a path is not feasible.
RoutingOutcome global_dijkstra(const FlowRequest& f, const NetworkView& net);

/// Top-k loop-free latency paths (Yen). Among those meeting the QoS
/// constraints the least congested (mean CD) wins; non-QoS flows take the
/// least congested of the k.
RoutingOutcome sway_yen_k(const FlowRequest& f, const NetworkView& net, int k);

/// Depth-first enumeration of simple paths that avoid congested and failed
/// links, bounded by twice the grid distance and by max_paths complete
/// paths. Returns the lowest-latency path found.
RoutingOutcome sdra_dfs(const FlowRequest& f, const NetworkView& net, int max_paths);

}  // namespace leoroute
