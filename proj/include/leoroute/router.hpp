#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/control_plane.hpp"
#include "leoroute/flow.hpp"
#include "leoroute/link_state.hpp"
#include "leoroute/network.hpp"
#include "leoroute/path.hpp"

namespace leoroute {

/// No path exists inside the allowed search space.
class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Restricted search space: every monotone combination of the step vectors
/// of a minimum-hop path. For m diagonal and n longitudinal steps this is the
/// (m+1) x (n+1) parallelogram with src and dst at opposite corners.
struct SearchGraph {
  struct Edge {
    int from = 0;
    int to = 0;
    EdgeId isl = 0;
    IslKind kind = IslKind::IntraOrbit;
    double cost = 1.0;
  };

  GridCoord source;
  GridCoord dest;
  std::vector<GridCoord> vertices;
  std::vector<Edge> edges;
  int source_index = 0;
  int dest_index = 0;
};

struct RouterParams {
  ScoreWeights weights;
  double max_cd = 0.82;
  double delta_cd = 0.05;
};

/// Minimum-hop path on the six-neighbour torus, rasterised along the
/// src -> dst line.
GridPath bresenham_path(GridCoord src, GridCoord dst, const Constellation& c);

/// Hop count of bresenham_path without building it.
int grid_distance(GridCoord src, GridCoord dst, int num_orbits, int sats_per_orbit);

/// Parallelogram of m diagonal and n longitudinal steps between src and dst.
/// Throws std::invalid_argument when m < 1 or n < 1 (use
/// handle_degenerate_line) or when the steps do not lead from src to dst.
SearchGraph ideal_parallelogram(GridCoord src, GridCoord dst, int m, int n, const Constellation& c);

/// Search lattice spanned by the distinct step vectors of `seed`.
SearchGraph search_lattice(const GridPath& seed, const Constellation& c);

/// Number of distinct step vectors in the path; fewer than two means the
/// lattice is a single line.
int step_generators(const GridPath& p);

void assign_costs(SearchGraph& g, const NetworkView& net, const ScoreWeights& w, double max_cd);

/// Minimum-cost src -> dst path in g. kMaxCost edges are absent. Ties go to
/// fewer hops, then the lexicographically smallest coordinate sequence.
/// Throws UnreachableError.
GridPath dijkstra_in_subgraph(const SearchGraph& g, const Constellation& c);

bool is_satisfying_path(const GridPath& p, const FlowConstraints& fc, const NetworkView& net);

/// Returns the straight line if every link on it is priced below kMaxCost;
/// otherwise detours from the last free hop into each of the four
/// perpendicular neighbours and re-runs Bresenham to dst. Shortest free
/// composite wins, then lowest cost. Throws UnreachableError.
GridPath handle_degenerate_line(GridCoord src, GridCoord dst, const NetworkView& net,
                                const ScoreWeights& w, double max_cd);

/// floor((1 - max_cd) / delta_cd), at least 1.
int relaxation_iterations(double max_cd, double delta_cd);

/// QoS routing with congestion-threshold relaxation. Pure: does not install
/// the path. route_time_ms is left for the caller to fill.
RoutingOutcome route_flow(const FlowRequest& f, const NetworkView& net, const RouterParams& params);

enum class MarkReason { Congested, Failed };

struct MarkOutcome {
  std::vector<FlowId> rerouted;
  std::vector<FlowId> dropped;  // Failed links only: flows left with no path
};

/// Returns a replacement path for an installed flow, or nullopt when the
/// flow cannot be moved.
using RerouteFn = std::function<std::optional<GridPath>(const InstalledFlow&, const NetworkView&)>;

/// Prices the link at kMaxCost (Failed also excludes it until restore_link)
/// and re-routes every installed flow that traverses it. Loads and flow
/// tables are updated. Throws std::invalid_argument for a non-adjacent pair.
MarkOutcome mark_link(NetworkView& net, ControllerState& ctl, GridCoord a, GridCoord b,
                      MarkReason reason, const RerouteFn& reroute);

void restore_link(NetworkView& net, GridCoord a, GridCoord b);

}  // namespace leoroute
