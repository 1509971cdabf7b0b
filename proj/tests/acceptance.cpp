// Acceptance checks. Prints one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance --only N   run criterion N
// Exit status is non-zero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "leoroute/control_plane.hpp"
#include "leoroute/report_io.hpp"
#include "leoroute/router.hpp"
#include "leoroute/sim_engine.hpp"
#include "net_fixture.hpp"
#include "oracles.hpp"

using namespace leoroute;

namespace {

constexpr double kDistanceTolKm = 0.5;
constexpr double kLatencyTolMs = 0.001;
constexpr double kScoreTol = 1e-6;
constexpr double kCostTol = 1e-5;
constexpr double kRelTol = 1e-9;
constexpr int kSeedsRequired = 8;

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Result intra_orbit_link() {
  const auto c = fixture::grid();
  const double d = inter_satellite_distance({0, 0}, {0, 1}, *c, 0.0);
  const double lat = propagation_delay_ms(d);
  // Oracle: arc of a 2*pi/10 sector at radius Re + h, over c.
  const double arc = (6378.137 + 2000.0) * 2.0 * std::numbers::pi / 10.0;
  const double arc_ms = arc / 299792.458 * 1000.0;
  const bool ok = std::abs(d - 5264.1) <= kDistanceTolKm && std::abs(lat - 17.5592) <= kLatencyTolMs &&
                  std::abs(d - arc) <= 1e-9 * arc && std::abs(lat - arc_ms) <= 1e-12 * arc_ms;
  return {ok, fmt("distance %.4f km (target 5264.1 +-%.1f), latency %.5f ms (target 17.5592 +-%.3f)", d,
                  kDistanceTolKm, lat, kLatencyTolMs)};
}

Result bresenham_minimality() {
  const auto c = fixture::grid();
  int bad = 0, pairs = 0;
  for (int i = 0; i < c->size(); ++i) {
    const GridCoord src = c->coord_at(i);
    const auto dist = oracle::bfs(src, 10, 10);
    for (int j = 0; j < c->size(); ++j) {
      ++pairs;
      const GridPath p = bresenham_path(src, c->coord_at(j), *c);
      if (p.hop_count() != dist[static_cast<std::size_t>(j)] || !is_valid_path(p, *c)) ++bad;
    }
  }
  return {bad == 0 && pairs == 10000, fmt("%d pairs, %d mismatches against BFS", pairs, bad)};
}

Result parallelogram_optimality() {
  const auto c = fixture::grid(20, 40);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> cost(0.5, 5.0);
  int bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    int m = 0, n = 0;
    do {
      m = 1 + static_cast<int>(rng() % 9);
      n = 1 + static_cast<int>(rng() % 9);
    } while (m + n > 10);
    SearchGraph g = ideal_parallelogram({0, 0}, {m, m + n}, m, n, *c);
    std::map<std::pair<GridCoord, GridCoord>, double> w;
    for (auto& e : g.edges) {
      e.cost = cost(rng);
      w[{g.vertices[static_cast<std::size_t>(e.from)], g.vertices[static_cast<std::size_t>(e.to)]}] = e.cost;
    }
    auto sum = [&](const std::vector<GridCoord>& hops) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < hops.size(); ++i) s += w.at({hops[i], hops[i + 1]});
      return s;
    };
    double best = INFINITY;
    for (const auto& p : oracle::monotone_paths({0, 0}, {1, 1}, {0, 1}, m, n, 20, 40)) best = std::min(best, sum(p));
    const double got = sum(dijkstra_in_subgraph(g, *c).hops);
    const double rel = std::abs(got - best) / best;
    worst = std::max(worst, rel);
    if (rel > kRelTol) ++bad;
  }
  return {bad == 0, fmt("500 cases, %d above rel tol %.0e, worst rel error %.2e", bad, kRelTol, worst)};
}

Result search_graph_size() {
  const auto c = fixture::grid(20, 40);
  int bad = 0;
  for (int m = 1; m <= 9; ++m) {
    for (int n = 1; n <= 9; ++n) {
      const SearchGraph g = ideal_parallelogram({0, 0}, {m, m + n}, m, n, *c);
      if (static_cast<int>(g.vertices.size()) != (m + 1) * (n + 1)) ++bad;
      if (static_cast<int>(g.edges.size()) != (m + 1) * n + (n + 1) * m) ++bad;
    }
  }
  return {bad == 0, fmt("81 (m, n) pairs, %d size mismatches", bad)};
}

Result scoring_spot_check() {
  LinkMetrics m;
  m.bandwidth_gbps = 4.0;
  m.load_gbps = 3.0;  // CD 0.75, AB 1.0
  m.initial_plr = 0.001;
  m.latency.push(17.5592);
  const ScoreWeights w{0.55, 0.30, 0.15, 0.0, 0.0};
  const LinkScore s = link_score(m, w, kDefaultCdThreshold, false);
  const double oracle_score = 0.55 * 1.0 + 0.30 / 17.5592 + 0.15 * (1.0 - 0.001);
  const bool ok = std::abs(s.score - 0.716935) <= kScoreTol && std::abs(s.cost - 1.39483) <= kCostTol &&
                  std::abs(s.score - oracle_score) <= 1e-15;
  return {ok, fmt("score %.7f (target 0.716935 +-1e-6), cost %.6f (target 1.39483 +-1e-5)", s.score, s.cost)};
}

Result iteration_count() {
  const auto c = fixture::grid();
  const NetworkView net = fixture::uniform_net(c, 0.79);
  FlowRequest f;
  f.src = c->occupant({0, 0}, 0);
  f.dst = c->occupant({2, 5}, 0);
  f.constraints.qos_enabled = true;
  f.constraints.min_bandwidth_gbps = 2.0;
  const RoutingOutcome out = route_flow(f, net, RouterParams{{}, 0.82, 0.05});
  const bool ok = relaxation_iterations(0.82, 0.05) == 3 && out.iterations_used == 3 &&
                  out.status == RoutingStatus::Unsatisfiable;
  return {ok, fmt("%d iterations attempted, status %s", out.iterations_used,
                  out.status == RoutingStatus::Unsatisfiable ? "Unsatisfiable" : "not Unsatisfiable")};
}

Result congestion_avoidance() {
  const MetricsReport r = run(Scenario{}, Scheme::FybrrLink);
  const auto marks = std::count_if(r.marks.begin(), r.marks.end(), [](const MarkLogEntry& m) { return m.marked; });
  const auto violations = audit_congestion_avoidance(r);
  return {violations.empty() && marks > 0,
          fmt("%zu routes audited against %ld congestion marks, %zu violations", r.routes.size(),
              static_cast<long>(marks), violations.size())};
}

using RuleMap = std::map<GridCoord, std::set<std::tuple<FlowId, GridCoord, GridCoord, GridCoord>>>;

RuleMap by_position(const ControllerState& ctl) {
  RuleMap out;
  for (SatelliteId s = 0; s < ctl.size(); ++s) {
    for (const FlowRule& r : ctl.table(s).rules) {
      out[ctl.position_of(s)].insert(
          {r.flow_id, ctl.position_of(r.match_src), ctl.position_of(r.match_dst), ctl.position_of(r.next_hop)});
    }
  }
  return out;
}

Result handover_invariance() {
  std::mt19937_64 rng(77);
  int bad = 0, rules = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int P = 1 + static_cast<int>(rng() % 10);
    const int S = 1 + static_cast<int>(rng() % 10);
    ControllerState ctl(P, S);
    for (int k = 0; k < static_cast<int>(rng() % 4); ++k) {
      transfer_flow_rules(ctl);
      ctl.advance_state();
    }
    const int flows = 1 + static_cast<int>(rng() % 8);
    for (FlowId f = 0; f < flows; ++f) {
      GridPath p;
      const int len = 2 + static_cast<int>(rng() % 6);
      for (int h = 0; h < len; ++h) p.hops.push_back({static_cast<int>(rng() % P), static_cast<int>(rng() % S)});
      update_flow_table(f, p, ctl);
    }
    const RuleMap before = by_position(ctl);
    for (const auto& [pos, set] : before) rules += static_cast<int>(set.size());
    transfer_flow_rules(ctl);
    ctl.advance_state();
    if (by_position(ctl) != before) ++bad;
  }
  return {bad == 0, fmt("100 configurations (%d rules), %d changed mapping", rules, bad)};
}

Result failure_detection() {
  Scenario base;
  base.workload.n_flows = 12;
  base.duration_s = 16;
  const auto c = build_constellation(base.constellation);
  std::mt19937_64 rng(9);
  int isl_ok = 0, sat_ok = 0;
  const int trials = 5;
  int worst_isl = 0, worst_sat = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int t = 1 + static_cast<int>(rng() % 10);
    const GridCoord a = c.coord_at(static_cast<int>(rng() % 100));
    const GridCoord b = neighbors(a, c)[rng() % 6].coord;
    Scenario sc = base;
    sc.events.push_back({t, EventKind::FailIsl, a, b, 0, 0.0});
    const MetricsReport r = run(sc, Scheme::FybrrLink);
    for (const auto& v : r.verdicts) {
      if (v.verdict.kind != TopologyVerdict::Kind::IslFailure) continue;
      worst_isl = std::max(worst_isl, v.tick - t);
      if (v.tick >= t && v.tick <= t + 1 && r.final_failed[static_cast<std::size_t>(*c.edge_between(a, b))]) ++isl_ok;
      break;
    }

    const SatelliteId dead = static_cast<SatelliteId>(rng() % 100);
    Scenario ss = base;
    ss.events.push_back({t, EventKind::FailSatellite, {}, {}, dead, 0.0});
    const MetricsReport q = run(ss, Scheme::FybrrLink);
    const auto failed = std::count(q.final_failed.begin(), q.final_failed.end(), 1);
    for (const auto& v : q.verdicts) {
      if (v.verdict.kind != TopologyVerdict::Kind::SatelliteFailure) continue;
      worst_sat = std::max(worst_sat, v.tick - t);
      if (v.verdict.satellite == dead && v.tick <= t + 2 && failed == 6) ++sat_ok;
      break;
    }
  }
  return {isl_ok == trials && sat_ok == trials,
          fmt("ISL %d/%d within 1 tick (worst +%d), satellite %d/%d within 2 ticks with 6 edges (worst +%d)",
              isl_ok, trials, worst_isl, sat_ok, trials, worst_sat)};
}

Result comparative() {
  const std::vector<Scheme> schemes{Scheme::FybrrLink, Scheme::GlobalDijkstra, Scheme::SwayYenK, Scheme::SdraDfs};
  int a = 0, b = 0, cc = 0, d = 0;
  std::string rows;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario sc;
    sc.seed = seed;
    std::vector<Summary> s;
    for (Scheme scheme : schemes) s.push_back(summarize(run(sc, scheme)));
    const bool ca = s[0].satisfied >= s[1].satisfied && s[0].satisfied >= s[2].satisfied &&
                    s[0].satisfied >= s[3].satisfied && s[0].satisfied > s[1].satisfied;
    const bool cb = s[0].mean_routing_time_ms < s[1].mean_routing_time_ms &&
                    s[1].mean_routing_time_ms < s[2].mean_routing_time_ms &&
                    s[2].mean_routing_time_ms < s[3].mean_routing_time_ms;
    const bool ccd = s[0].mean_avg_cd <= s[1].mean_avg_cd;
    const bool cd = s[0].mean_plr <= s[1].mean_plr;
    a += ca;
    b += cb;
    cc += ccd;
    d += cd;
    rows += fmt("\n    seed %2llu  satisfied %3d/%3d/%3d/%3d  time_ms %.4f/%.4f/%.4f/%.4f  cd %.4f/%.4f  plr %.5f/%.5f  [%c%c%c%c]",
                static_cast<unsigned long long>(seed), s[0].satisfied, s[1].satisfied, s[2].satisfied,
                s[3].satisfied, s[0].mean_routing_time_ms, s[1].mean_routing_time_ms, s[2].mean_routing_time_ms,
                s[3].mean_routing_time_ms, s[0].mean_avg_cd, s[1].mean_avg_cd, s[0].mean_plr, s[1].mean_plr,
                ca ? 'a' : '-', cb ? 'b' : '-', ccd ? 'c' : '-', cd ? 'd' : '-');
  }
  const bool ok = a >= kSeedsRequired && b >= kSeedsRequired && cc >= kSeedsRequired && d >= kSeedsRequired;
  return {ok, fmt("seeds holding (need %d/10): (a) satisfaction %d, (b) time order %d, (c) network CD %d, "
                  "(d) path PLR %d; order fybrrlink/dijkstra/sway/sdra",
                  kSeedsRequired, a, b, cc, d) +
                  rows};
}

std::string without_column(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string line, out;
  int drop = -1;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (drop < 0) drop = static_cast<int>(std::find(cells.begin(), cells.end(), column) - cells.begin());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (static_cast<int>(i) == drop) continue;
      out += cells[i];
      out += ',';
    }
    out += '\n';
  }
  return out;
}

Result determinism() {
  int differ = 0;
  std::size_t bytes = 0;
  for (Scheme s : {Scheme::FybrrLink, Scheme::GlobalDijkstra, Scheme::SwayYenK, Scheme::SdraDfs}) {
    std::string flows[2], ticks[2];
    for (int k = 0; k < 2; ++k) {
      const MetricsReport r = run(Scenario{}, s);
      std::ostringstream f, t;
      write_per_flow_csv(r, f);
      write_per_tick_csv(r, t);
      flows[k] = without_column(f.str(), "routing_time_ms");
      ticks[k] = t.str();
    }
    differ += flows[0] != flows[1];
    differ += ticks[0] != ticks[1];
    bytes += flows[0].size() + ticks[0].size();
  }
  return {differ == 0, fmt("4 schemes x 2 runs, %zu bytes compared, %d CSVs differ", bytes, differ)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria{
      {1, "intra-orbit distance and latency", intra_orbit_link},
      {2, "bresenham minimality", bresenham_minimality},
      {3, "parallelogram dijkstra optimality", parallelogram_optimality},
      {4, "search graph size", search_graph_size},
      {5, "link score spot check", scoring_spot_check},
      {6, "relaxation iteration count", iteration_count},
      {7, "congestion avoidance audit", congestion_avoidance},
      {8, "handover invariance", handover_invariance},
      {9, "failure detection", failure_detection},
      {10, "comparative directional checks", comparative},
      {11, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s C%02d %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
