#include "leoroute/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leoroute/graph.hpp"

namespace leoroute {

namespace {

int mod(int v, int m) {
  int r = v % m;
  return r < 0 ? r + m : r;
}

struct Step {
  int dorbit = 0;
  int dslot = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

struct LinePlan {
  int orbit_sign = 1;
  int slot_sign = 1;
  int d_orbit = 0;
  int d_slot = 0;
  int hops = 0;
};

int hop_rule(int d_orbit, int d_slot) {
  if (d_slot >= d_orbit) return d_slot;
  return (d_orbit - d_slot) % 2 == 0 ? d_orbit : d_orbit + 1;
}

LinePlan plan_line(GridCoord src, GridCoord dst, int P, int S) {
  const int raw_o = mod(dst.orbit - src.orbit, P);
  const int raw_s = mod(dst.slot - src.slot, S);
  // Preference per axis: shorter modular distance first, then increasing index.
  auto options = [](int raw, int size) {
    std::vector<std::pair<int, int>> out{{1, raw}};
    if (raw != 0) {
      out.emplace_back(-1, size - raw);
      if (out[1].second < out[0].second) std::swap(out[0], out[1]);
    }
    return out;
  };
  LinePlan best;
  best.hops = std::numeric_limits<int>::max();
  for (const auto& [so, d_o] : options(raw_o, P)) {
    for (const auto& [ss, d_s] : options(raw_s, S)) {
      const int h = hop_rule(d_o, d_s);
      if (h < best.hops) best = {so, ss, d_o, d_s, h};
    }
  }
  return best;
}

// Round-to-nearest rasterisation: count of minor-axis increments after i of n
// major steps when k increments are spread along the line.
long long raster(long long i, long long k, long long n) { return (2 * i * k + n) / (2 * n); }

std::vector<Step> line_steps(const LinePlan& plan) {
  std::vector<Step> steps;
  const int so = plan.orbit_sign;
  const int ss = plan.slot_sign;
  const int d_o = plan.d_orbit;
  const int d_s = plan.d_slot;
  if (d_s >= d_o) {
    for (int i = 0; i < d_s; ++i) {
      const bool diag = raster(i + 1, d_o, d_s) > raster(i, d_o, d_s);
      steps.push_back(diag ? Step{so, ss} : Step{0, ss});
    }
    return steps;
  }
  // Slot offset smaller than orbit offset: zig-zag diagonals, plus one
  // longitudinal step when the parities differ.
  const bool parity_ok = (d_o - d_s) % 2 == 0;
  const int target = parity_ok ? d_s : d_s - 1;
  const int up = (d_o + target) / 2;
  for (int i = 0; i < d_o; ++i) {
    const bool rise = raster(i + 1, up, d_o) > raster(i, up, d_o);
    steps.push_back(rise ? Step{so, ss} : Step{so, -ss});
  }
  if (!parity_ok) {
    // Insert where the walk lags the ideal line the most.
    int at = 0;
    long long worst = std::numeric_limits<long long>::min();
    for (int i = 0; i <= d_o; ++i) {
      const long long actual = 2 * raster(i, up, d_o) - i;
      const long long lag = static_cast<long long>(i) * d_s - actual * d_o;
      if (lag > worst) {
        worst = lag;
        at = i;
      }
    }
    steps.insert(steps.begin() + at, Step{0, ss});
  }
  return steps;
}

GridPath walk(GridCoord src, const std::vector<Step>& steps, const Constellation& c) {
  GridPath p;
  p.hops.reserve(steps.size() + 1);
  p.hops.push_back(src);
  GridCoord cur = src;
  for (const Step& s : steps) {
    cur = c.wrap(cur.orbit + s.dorbit, cur.slot + s.dslot);
    p.hops.push_back(cur);
    (s.dorbit == 0 ? p.n : p.m)++;
  }
  return p;
}

Step step_between(GridCoord a, GridCoord b, const Constellation& c) {
  auto signed_unit = [](int diff, int size) {
    const int d = mod(diff, size);
    if (d == 0) return 0;
    return d == 1 ? 1 : -1;
  };
  return {signed_unit(b.orbit - a.orbit, c.num_orbits()), signed_unit(b.slot - a.slot, c.sats_per_orbit())};
}

struct Generator {
  Step step;
  int count = 0;
};

std::vector<Generator> generators_of(const GridPath& p, const Constellation& c) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i + 1 < p.hops.size(); ++i) {
    const Step s = step_between(p.hops[i], p.hops[i + 1], c);
    auto it = std::find_if(gens.begin(), gens.end(), [&](const Generator& g) { return g.step == s; });
    if (it == gens.end()) {
      gens.push_back({s, 1});
    } else {
      ++it->count;
    }
  }
  return gens;
}

SearchGraph build_lattice(GridCoord src, const std::vector<Generator>& gens, const Constellation& c) {
  SearchGraph g;
  g.source = src;
  const std::size_t dims = gens.size();
  std::vector<int> vertex_of(static_cast<std::size_t>(c.size()), -1);
  auto vertex = [&](GridCoord pos) {
    int& slot = vertex_of[static_cast<std::size_t>(c.index(pos))];
    if (slot < 0) {
      slot = static_cast<int>(g.vertices.size());
      g.vertices.push_back(pos);
    }
    return slot;
  };
  auto coord_of = [&](const std::vector<int>& idx) {
    int o = src.orbit, s = src.slot;
    for (std::size_t d = 0; d < dims; ++d) {
      o += idx[d] * gens[d].step.dorbit;
      s += idx[d] * gens[d].step.dslot;
    }
    return c.wrap(o, s);
  };

  std::vector<std::pair<int, int>> seen;
  std::vector<int> idx(dims, 0);
  while (true) {
    const int from = vertex(coord_of(idx));
    for (std::size_t d = 0; d < dims; ++d) {
      if (idx[d] == gens[d].count) continue;
      ++idx[d];
      const GridCoord to_pos = coord_of(idx);
      --idx[d];
      const int to = vertex(to_pos);
      if (std::find(seen.begin(), seen.end(), std::pair{from, to}) != seen.end()) continue;
      seen.emplace_back(from, to);
      const EdgeId isl = *c.edge_between(g.vertices[static_cast<std::size_t>(from)], to_pos);
      g.edges.push_back({from, to, isl, c.edge_kind(isl), 1.0});
    }
    std::size_t d = 0;
    while (d < dims && idx[d] == gens[d].count) idx[d++] = 0;
    if (d == dims) break;
    ++idx[d];
  }
  std::vector<int> full(dims);
  for (std::size_t d = 0; d < dims; ++d) full[d] = gens[d].count;
  g.dest = coord_of(full);
  g.source_index = vertex_of[static_cast<std::size_t>(c.index(src))];
  g.dest_index = vertex_of[static_cast<std::size_t>(c.index(g.dest))];
  return g;
}

bool link_free(EdgeId e, const NetworkView& net, const ScoreWeights& w, double max_cd) {
  return net.edge_cost(e, w, max_cd) < kMaxCost;
}

bool all_free(const GridPath& p, const NetworkView& net, const ScoreWeights& w, double max_cd) {
  for (EdgeId e : path_edges(p, net.constellation())) {
    if (!link_free(e, net, w, max_cd)) return false;
  }
  return true;
}

}  // namespace

int grid_distance(GridCoord src, GridCoord dst, int num_orbits, int sats_per_orbit) {
  return plan_line(src, dst, num_orbits, sats_per_orbit).hops;
}

GridPath bresenham_path(GridCoord src, GridCoord dst, const Constellation& c) {
  if (!c.contains(src) || !c.contains(dst)) throw std::invalid_argument("bresenham_path: coordinate out of range");
  const LinePlan plan = plan_line(src, dst, c.num_orbits(), c.sats_per_orbit());
  return walk(src, line_steps(plan), c);
}

SearchGraph ideal_parallelogram(GridCoord src, GridCoord dst, int m, int n, const Constellation& c) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("ideal_parallelogram: degenerate line (m = " + std::to_string(m) +
                                ", n = " + std::to_string(n) + ")");
  }
  const LinePlan plan = plan_line(src, dst, c.num_orbits(), c.sats_per_orbit());
  std::vector<Generator> gens{{{plan.orbit_sign, plan.slot_sign}, m}, {{0, plan.slot_sign}, n}};
  SearchGraph g = build_lattice(src, gens, c);
  if (g.dest != dst) throw std::invalid_argument("ideal_parallelogram: m, n do not connect src to dst");
  return g;
}

SearchGraph search_lattice(const GridPath& seed, const Constellation& c) {
  if (seed.hops.empty()) throw std::invalid_argument("search_lattice: empty path");
  return build_lattice(seed.hops.front(), generators_of(seed, c), c);
}

int step_generators(const GridPath& p) {
  int count = 0;
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i + 1 < p.hops.size(); ++i) {
    const std::pair<int, int> d{p.hops[i + 1].orbit - p.hops[i].orbit, p.hops[i + 1].slot - p.hops[i].slot};
    if (std::find(seen.begin(), seen.end(), d) == seen.end()) {
      seen.push_back(d);
      ++count;
    }
  }
  return count;
}

void assign_costs(SearchGraph& g, const NetworkView& net, const ScoreWeights& w, double max_cd) {
  for (auto& e : g.edges) e.cost = net.edge_cost(e.isl, w, max_cd);
}

GridPath dijkstra_in_subgraph(const SearchGraph& g, const Constellation& c) {
  graph::Digraph dg(static_cast<int>(g.vertices.size()));
  for (const auto& e : g.edges) dg.add_arc(e.from, e.to, e.cost);
  std::vector<int> keys(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) keys[i] = c.index(g.vertices[i]);
  graph::Filter filter;
  filter.absent_at = kMaxCost;
  const auto found = graph::shortest_path(dg, g.source_index, g.dest_index, keys, filter);
  if (!found) throw UnreachableError("destination unreachable inside the search graph");
  std::vector<GridCoord> hops;
  hops.reserve(found->nodes.size());
  for (int v : found->nodes) hops.push_back(g.vertices[static_cast<std::size_t>(v)]);
  return make_path(std::move(hops), c);
}

bool is_satisfying_path(const GridPath& p, const FlowConstraints& fc, const NetworkView& net) {
  if (!fc.qos_enabled) return true;
  double bottleneck = std::numeric_limits<double>::infinity();
  double delay = 0.0;
  double jitter = 0.0;
  double delivered = 1.0;
  for (EdgeId e : path_edges(p, net.constellation())) {
    if (net.excluded(e)) return false;
    bottleneck = std::min(bottleneck, net.available_bandwidth(e));
    delay += net.latency_ms(e);
    jitter = std::max(jitter, net.jitter_ms(e));
    delivered *= 1.0 - net.plr(e);
  }
  return bottleneck >= fc.min_bandwidth_gbps && delay <= fc.max_delay_ms && jitter <= fc.max_jitter_ms &&
         1.0 - delivered <= fc.max_plr;
}

GridPath handle_degenerate_line(GridCoord src, GridCoord dst, const NetworkView& net, const ScoreWeights& w,
                                double max_cd) {
  const Constellation& c = net.constellation();
  GridPath line = bresenham_path(src, dst, c);
  const auto edges = path_edges(line, c);
  std::size_t blocked = 0;
  while (blocked < edges.size() && link_free(edges[blocked], net, w, max_cd)) ++blocked;
  if (blocked == edges.size()) return line;

  const GridCoord pivot = line.hops[blocked];
  const Step ahead = step_between(pivot, line.hops[blocked + 1], c);
  const GridCoord fwd = c.wrap(pivot.orbit + ahead.dorbit, pivot.slot + ahead.dslot);
  const GridCoord back = c.wrap(pivot.orbit - ahead.dorbit, pivot.slot - ahead.dslot);
  const std::vector<GridCoord> prefix(line.hops.begin(), line.hops.begin() + static_cast<long>(blocked) + 1);

  std::optional<GridPath> best;
  double best_cost = 0.0;
  for (const Neighbor& nb : neighbors(pivot, c)) {
    if (nb.coord == fwd || nb.coord == back) continue;
    if (std::find(prefix.begin(), prefix.end(), nb.coord) != prefix.end()) continue;
    if (!link_free(*c.edge_between(pivot, nb.coord), net, w, max_cd)) continue;
    std::vector<GridCoord> hops = prefix;
    const GridPath tail = bresenham_path(nb.coord, dst, c);
    hops.insert(hops.end(), tail.hops.begin(), tail.hops.end());
    GridPath candidate = make_path(std::move(hops), c);
    if (!is_valid_path(candidate, c) || !all_free(candidate, net, w, max_cd)) continue;
    const double cost = path_cost(candidate, net, w, max_cd);
    const bool wins = !best || candidate.hop_count() < best->hop_count() ||
                      (candidate.hop_count() == best->hop_count() &&
                       (cost < best_cost || (cost == best_cost && candidate.hops < best->hops)));
    if (wins) {
      best = std::move(candidate);
      best_cost = cost;
    }
  }
  if (!best) throw UnreachableError("every detour around the blocked line is congested");
  return *best;
}

int relaxation_iterations(double max_cd, double delta_cd) {
  if (!(max_cd > 0.0 && max_cd < 1.0)) throw std::invalid_argument("max_cd must be in (0, 1)");
  if (!(delta_cd > 0.0)) throw std::invalid_argument("delta_cd must be > 0");
  const auto n = static_cast<int>(std::floor((1.0 - max_cd) / delta_cd + 1e-9));
  return std::max(1, n);
}

RoutingOutcome route_flow(const FlowRequest& f, const NetworkView& net, const RouterParams& params) {
  const Constellation& c = net.constellation();
  if (f.src < 0 || f.dst < 0 || f.src >= c.size() || f.dst >= c.size()) {
    throw std::invalid_argument("route_flow: unknown satellite id");
  }
  const int iterations = relaxation_iterations(params.max_cd, params.delta_cd);
  const int state = net.topology_state();
  const GridCoord src = c.position_of(f.src, state);
  const GridCoord dst = c.position_of(f.dst, state);
  const bool qos = f.constraints.qos_enabled;

  RoutingOutcome out;
  out.path = bresenham_path(src, dst, c);
  if (all_free(out.path, net, params.weights, params.max_cd) &&
      (!qos || is_satisfying_path(out.path, f.constraints, net))) {
    out.status = qos ? RoutingStatus::Satisfied : RoutingStatus::NonQos;
    out.feasible = true;
    return out;
  }

  const bool degenerate = step_generators(out.path) < 2;
  SearchGraph lattice;
  if (!degenerate) lattice = search_lattice(out.path, c);

  std::optional<GridPath> best;
  double best_cost = 0.0;
  double max_cd = params.max_cd;
  for (int i = 0; i < iterations; ++i, max_cd += params.delta_cd) {
    out.iterations_used = i + 1;
    std::optional<GridPath> found;
    try {
      if (degenerate) {
        found = handle_degenerate_line(src, dst, net, params.weights, std::min(max_cd, net.cd_threshold()));
      } else {
        assign_costs(lattice, net, params.weights, max_cd);
        found = dijkstra_in_subgraph(lattice, c);
      }
    } catch (const UnreachableError&) {
      continue;
    }
    const double cost = path_cost(*found, net, params.weights, max_cd);
    if (!best || cost < best_cost) {
      best = *found;
      best_cost = cost;
    }
    if (!qos || is_satisfying_path(*found, f.constraints, net)) {
      out.status = qos ? RoutingStatus::Satisfied : RoutingStatus::NonQos;
      out.path = std::move(*found);
      out.feasible = true;
      return out;
    }
  }
  out.status = qos ? RoutingStatus::Unsatisfiable : RoutingStatus::NonQos;
  if (best) {
    out.path = std::move(*best);
    out.feasible = true;
  }
  return out;
}

MarkOutcome mark_link(NetworkView& net, ControllerState& ctl, GridCoord a, GridCoord b, MarkReason reason,
                      const RerouteFn& reroute) {
  const auto edge = net.edge_between(a, b);
  if (!edge) throw std::invalid_argument("mark_link: satellites are not adjacent");
  if (reason == MarkReason::Failed) {
    net.edge(*edge).failed = true;
  } else {
    net.edge(*edge).congested_mark = true;
  }

  std::vector<FlowId> affected;
  for (const auto& [id, flow] : ctl.flows()) {
    const auto edges = path_edges(flow.path, net.constellation());
    if (std::find(edges.begin(), edges.end(), *edge) != edges.end()) affected.push_back(id);
  }

  MarkOutcome out;
  for (FlowId id : affected) {
    InstalledFlow& flow = ctl.flows().at(id);
    const double demand = flow.request.demand_gbps;
    apply_flow_load(flow.path, -demand, net);
    std::optional<GridPath> next = reroute ? reroute(flow, net) : std::nullopt;
    if (next && !next->empty() && path_usable(*next, net)) {
      apply_flow_load(*next, demand, net);
      update_flow_table(id, *next, ctl);
      flow.path = std::move(*next);
      out.rerouted.push_back(id);
    } else if (reason == MarkReason::Failed) {
      remove_flow_rules(id, ctl);
      ctl.flows().erase(id);
      out.dropped.push_back(id);
    } else {
      apply_flow_load(flow.path, demand, net);
    }
  }
  return out;
}

void restore_link(NetworkView& net, GridCoord a, GridCoord b) {
  const auto edge = net.edge_between(a, b);
  if (!edge) throw std::invalid_argument("restore_link: satellites are not adjacent");
  net.edge(*edge).failed = false;
  net.edge(*edge).congested_mark = false;
}

}  // namespace leoroute
