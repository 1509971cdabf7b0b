#include "leoroute/control_plane.hpp"

#include <algorithm>

namespace leoroute {

namespace {

int mod(int v, int m) {
  int r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

const FlowRule* FlowTable::find(FlowId id) const {
  for (const auto& r : rules) {
    if (r.flow_id == id) return &r;
  }
  return nullptr;
}

ControllerState::ControllerState(int num_orbits, int sats_per_orbit)
    : num_orbits_(num_orbits), sats_per_orbit_(sats_per_orbit) {
  if (num_orbits < 1 || sats_per_orbit < 1) {
    throw std::invalid_argument("ControllerState: orbit dimensions must be >= 1");
  }
  tables_.resize(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) tables_[static_cast<std::size_t>(i)].owner = i;
}

ControllerState::ControllerState(const Constellation& c)
    : ControllerState(c.num_orbits(), c.sats_per_orbit()) {}

SatelliteId ControllerState::occupant(GridCoord pos) const {
  return pos.orbit * sats_per_orbit_ + mod(pos.slot - state_, sats_per_orbit_);
}

GridCoord ControllerState::position_of(SatelliteId id) const {
  return {id / sats_per_orbit_, mod(id % sats_per_orbit_ + state_, sats_per_orbit_)};
}

void remove_flow_rules(FlowId flow, ControllerState& ctl) {
  auto it = ctl.owners_.find(flow);
  if (it == ctl.owners_.end()) return;
  for (SatelliteId owner : it->second) {
    auto& rules = ctl.table(owner).rules;
    std::erase_if(rules, [&](const FlowRule& r) { return r.flow_id == flow; });
  }
  ctl.owners_.erase(it);
}

void update_flow_table(FlowId flow, const GridPath& path, ControllerState& ctl) {
  remove_flow_rules(flow, ctl);
  if (path.hops.size() < 2) return;
  const SatelliteId src = ctl.occupant(path.hops.front());
  const SatelliteId dst = ctl.occupant(path.hops.back());
  auto& owners = ctl.owners_[flow];
  for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
    const SatelliteId owner = ctl.occupant(path.hops[i]);
    ctl.table(owner).rules.push_back({flow, src, dst, ctl.occupant(path.hops[i + 1])});
    owners.push_back(owner);
  }
}

void transfer_flow_rules(ControllerState& ctl) {
  const int S = ctl.sats_per_orbit();
  const int next_state = ctl.state() + 1;
  // heir[x]: satellite that will occupy x's current slot after the shift.
  std::vector<SatelliteId> heir(static_cast<std::size_t>(ctl.size()));
  for (SatelliteId x = 0; x < ctl.size(); ++x) {
    const GridCoord pos = ctl.position_of(x);
    heir[static_cast<std::size_t>(x)] = pos.orbit * S + mod(pos.slot - next_state, S);
  }
  auto remap = [&](SatelliteId id) { return heir[static_cast<std::size_t>(id)]; };

  std::vector<FlowTable> moved(ctl.tables_.size());
  for (SatelliteId x = 0; x < ctl.size(); ++x) {
    FlowTable& dst = moved[static_cast<std::size_t>(remap(x))];
    dst.owner = remap(x);
    for (FlowRule r : ctl.tables_[static_cast<std::size_t>(x)].rules) {
      r.match_src = remap(r.match_src);
      r.match_dst = remap(r.match_dst);
      r.next_hop = remap(r.next_hop);
      dst.rules.push_back(r);
    }
  }
  ctl.tables_ = std::move(moved);
  for (auto& [flow, owners] : ctl.owners_) {
    for (auto& o : owners) o = remap(o);
  }
  for (auto& [flow, installed] : ctl.flows_) {
    installed.request.src = remap(installed.request.src);
    installed.request.dst = remap(installed.request.dst);
  }
}

void transfer_flow_rules(const Constellation& c, ControllerState& ctl) {
  if (c.num_orbits() != ctl.num_orbits() || c.sats_per_orbit() != ctl.sats_per_orbit()) {
    throw std::invalid_argument("transfer_flow_rules: controller does not match constellation");
  }
  transfer_flow_rules(ctl);
}

std::vector<SatelliteId> trace_flow(FlowId flow, SatelliteId from, const ControllerState& ctl) {
  std::vector<SatelliteId> visited{from};
  SatelliteId cur = from;
  for (int step = 0; step < ctl.size(); ++step) {
    const FlowRule* r = ctl.table(cur).find(flow);
    if (r == nullptr) break;
    cur = r->next_hop;
    visited.push_back(cur);
  }
  return visited;
}

std::optional<PingMsg> send_ping(SatelliteId s, const NetworkView& net, double t) {
  const Constellation& c = net.constellation();
  if (s < 0 || s >= c.size()) throw std::invalid_argument("send_ping: unknown satellite");
  if (net.satellite_down(s)) return std::nullopt;
  const int st = topology_state(t, c);
  const GridCoord pos = c.position_of(s, st);
  PingMsg msg;
  msg.id = s;
  msg.timestamp = t;
  for (const Neighbor& nb : neighbors(pos, c)) {
    const auto e = c.edge_between(pos, nb.coord);
    if (net.edge(*e).down) continue;
    const SatelliteId other = c.occupant(nb.coord, st);
    if (net.satellite_down(other)) continue;
    msg.adjacency.push_back(other);
  }
  return msg;
}

TopologyVerdict process_ping(const PingMsg& msg, const Constellation& c, double t) {
  if (msg.heartbeat != "alive") throw ProtocolError("ping without 'alive' heartbeat");
  if (msg.id < 0 || msg.id >= c.size()) {
    throw ProtocolError("ping from unknown satellite " + std::to_string(msg.id));
  }
  if (msg.adjacency.size() > 6) throw ProtocolError("ping adjacency has more than 6 entries");
  const auto expected = c.adjacency(topology_state(t, c), msg.id);
  for (SatelliteId other : msg.adjacency) {
    if (std::find(expected.begin(), expected.end(), other) == expected.end()) {
      throw ProtocolError("satellite " + std::to_string(msg.id) + " reports unexpected neighbour " +
                          std::to_string(other));
    }
  }
  TopologyVerdict v;
  for (SatelliteId other : expected) {
    if (std::find(msg.adjacency.begin(), msg.adjacency.end(), other) == msg.adjacency.end()) {
      v.missing.emplace_back(msg.id, other);
    }
  }
  if (!v.missing.empty()) v.kind = TopologyVerdict::Kind::IslFailure;
  return v;
}

std::vector<SatelliteId> detect_silent_satellites(double t, const std::map<SatelliteId, double>& last_ping,
                                                  double period) {
  if (!(period > 0.0)) throw std::invalid_argument("detect_silent_satellites: period must be > 0");
  std::vector<SatelliteId> silent;
  for (const auto& [id, when] : last_ping) {
    if (t - when >= 2.0 * period) silent.push_back(id);
  }
  return silent;
}

}  // namespace leoroute
