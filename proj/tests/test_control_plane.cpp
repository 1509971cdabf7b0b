#include <doctest.h>

#include <algorithm>
#include <map>

#include "leoroute/control_plane.hpp"
#include "leoroute/router.hpp"
#include "net_fixture.hpp"

using namespace leoroute;

namespace {

GridPath straight(std::vector<GridCoord> hops) {
  GridPath p;
  p.hops = std::move(hops);
  return p;
}

// Positions each flow's rules resolve to, as (position, next position).
std::vector<std::pair<GridCoord, GridCoord>> rule_positions(const ControllerState& ctl, FlowId flow) {
  std::vector<std::pair<GridCoord, GridCoord>> out;
  for (SatelliteId s = 0; s < ctl.size(); ++s) {
    if (const FlowRule* r = ctl.table(s).find(flow)) out.emplace_back(ctl.position_of(s), ctl.position_of(r->next_hop));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("flow rules along a path") {
  ControllerState ctl(4, 4);
  // A, B, C, D are satellites 0, 1, 2, 3 on orbit 0.
  update_flow_table(7, straight({{0, 0}, {0, 1}, {0, 2}, {0, 3}}), ctl);
  CHECK(ctl.table(0).find(7)->next_hop == 1);
  CHECK(ctl.table(1).find(7)->next_hop == 2);
  CHECK(ctl.table(2).find(7)->next_hop == 3);
  CHECK(ctl.table(3).find(7) == nullptr);
  CHECK(ctl.table(1).find(7)->match_src == 0);
  CHECK(ctl.table(1).find(7)->match_dst == 3);
  CHECK(trace_flow(7, 0, ctl) == std::vector<SatelliteId>{0, 1, 2, 3});

  update_flow_table(7, straight({{0, 0}, {1, 1}, {0, 2}, {0, 3}}), ctl);
  CHECK(ctl.table(1).find(7) == nullptr);
  CHECK(ctl.table(0).find(7)->next_hop == 5);
  remove_flow_rules(7, ctl);
  for (SatelliteId s = 0; s < ctl.size(); ++s) CHECK(ctl.table(s).rules.empty());
}

TEST_CASE("handover keeps rules on their positions") {
  for (int P = 1; P <= 10; ++P) {
    for (int S = 1; S <= 10; ++S) {
      ControllerState ctl(P, S);
      std::vector<GridCoord> hops;
      for (int o = 0; o < P; ++o) hops.push_back({o, (2 * o) % S});
      update_flow_table(1, straight(hops), ctl);
      const auto before = rule_positions(ctl, 1);
      const SatelliteId first_src = ctl.occupant(hops.front());
      for (int k = 0; k < S + 2; ++k) {
        transfer_flow_rules(ctl);
        ctl.advance_state();
        CHECK(rule_positions(ctl, 1) == before);
        const FlowRule* r = ctl.table(ctl.occupant(hops.front())).find(1);
        if (hops.size() > 1) {
          REQUIRE(r != nullptr);
          CHECK(r->match_src == ctl.occupant(hops.front()));
          CHECK(r->match_dst == ctl.occupant(hops.back()));
        }
      }
      CHECK(ctl.state() == 2 % S);
      if (2 % S != 0) CHECK(first_src != ctl.occupant(hops.front()));
    }
  }
}

TEST_CASE("handover moves rules to the next satellite in the orbit") {
  ControllerState ctl(2, 5);
  update_flow_table(3, straight({{0, 0}, {0, 1}}), ctl);
  CHECK(ctl.table(0).find(3) != nullptr);
  transfer_flow_rules(ctl);
  ctl.advance_state();
  CHECK(ctl.table(0).find(3) == nullptr);
  CHECK(ctl.occupant({0, 0}) == 4);
  CHECK(ctl.table(4).find(3)->next_hop == 0);
}

TEST_CASE("ping reports live adjacency") {
  const auto c = fixture::grid();
  NetworkView net = fixture::uniform_net(c);
  const auto msg = send_ping(11, net, 0.0);
  REQUIRE(msg);
  CHECK(msg->heartbeat == "alive");
  CHECK(msg->adjacency.size() == 6);
  CHECK(process_ping(*msg, *c, 0.0).kind == TopologyVerdict::Kind::Nominal);

  const GridCoord me = c->position_of(11, 0);
  const GridCoord other = neighbors(me, *c)[2].coord;
  net.edge(*c->edge_between(me, other)).down = true;
  const auto broken = send_ping(11, net, 0.0);
  CHECK(broken->adjacency.size() == 5);
  const TopologyVerdict v = process_ping(*broken, *c, 0.0);
  CHECK(v.kind == TopologyVerdict::Kind::IslFailure);
  REQUIRE(v.missing.size() == 1);
  CHECK(v.missing[0] == std::pair<SatelliteId, SatelliteId>{11, c->occupant(other, 0)});

  net.set_satellite_down(11, true);
  CHECK_FALSE(send_ping(11, net, 0.0).has_value());
  CHECK_THROWS_AS(send_ping(100, net, 0.0), std::invalid_argument);
}

TEST_CASE("malformed pings are rejected") {
  const auto c = fixture::grid();
  PingMsg bad;
  bad.id = 100;
  CHECK_THROWS_AS(process_ping(bad, *c, 0.0), ProtocolError);
  bad.id = 0;
  bad.heartbeat = "dead";
  CHECK_THROWS_AS(process_ping(bad, *c, 0.0), ProtocolError);
  bad.heartbeat = "alive";
  bad.adjacency = {1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS(process_ping(bad, *c, 0.0), ProtocolError);
  bad.adjacency = {55};
  CHECK_THROWS_AS(process_ping(bad, *c, 0.0), ProtocolError);
}

TEST_CASE("silent satellites after two periods") {
  const std::map<SatelliteId, double> last{{1, 10.0}, {2, 9.0}, {3, 8.0}, {4, 7.5}};
  CHECK(detect_silent_satellites(10.0, last, 1.0) == std::vector<SatelliteId>{3, 4});
  CHECK(detect_silent_satellites(10.0, last, 5.0).empty());
  CHECK(detect_silent_satellites(11.0, last, 1.0) == std::vector<SatelliteId>{2, 3, 4});
  CHECK_THROWS(detect_silent_satellites(10.0, last, 0.0));
}
