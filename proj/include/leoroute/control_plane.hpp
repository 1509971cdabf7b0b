#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leoroute/constellation.hpp"
#include "leoroute/flow.hpp"
#include "leoroute/network.hpp"
#include "leoroute/path.hpp"

namespace leoroute {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowRule {
  FlowId flow_id = 0;
  SatelliteId match_src = 0;
  SatelliteId match_dst = 0;
  SatelliteId next_hop = 0;

  friend auto operator<=>(const FlowRule&, const FlowRule&) = default;
};

struct FlowTable {
  SatelliteId owner = 0;
  std::vector<FlowRule> rules;

  const FlowRule* find(FlowId id) const;
};

/// A flow the controller has installed. Endpoints are anchored to grid
/// positions; the satellites serving them change at each handover.
struct InstalledFlow {
  FlowRequest request;
  GridPath path;
};

/// Flow tables of every satellite plus the controller's slot-shift counter.
/// Orbit sizes here may be anything >= 1, independent of Constellation's
/// routing minimum.
class ControllerState {
 public:
  ControllerState(int num_orbits, int sats_per_orbit);
  explicit ControllerState(const Constellation& c);

  int num_orbits() const { return num_orbits_; }
  int sats_per_orbit() const { return sats_per_orbit_; }
  int size() const { return num_orbits_ * sats_per_orbit_; }
  int state() const { return state_; }

  SatelliteId occupant(GridCoord pos) const;
  GridCoord position_of(SatelliteId id) const;

  FlowTable& table(SatelliteId id) { return tables_.at(static_cast<std::size_t>(id)); }
  const FlowTable& table(SatelliteId id) const { return tables_.at(static_cast<std::size_t>(id)); }

  std::map<FlowId, InstalledFlow>& flows() { return flows_; }
  const std::map<FlowId, InstalledFlow>& flows() const { return flows_; }

  /// Satellites advance one slot (the physical handover).
  void advance_state() { state_ = (state_ + 1) % sats_per_orbit_; }

 private:
  friend void update_flow_table(FlowId, const GridPath&, ControllerState&);
  friend void remove_flow_rules(FlowId, ControllerState&);
  friend void transfer_flow_rules(ControllerState&);

  int num_orbits_;
  int sats_per_orbit_;
  int state_ = 0;
  std::vector<FlowTable> tables_;
  std::unordered_map<FlowId, std::vector<SatelliteId>> owners_;
  std::map<FlowId, InstalledFlow> flows_;
};

/// Installs per-hop rules for the path (source through the hop before the
/// destination), replacing any previous rules of the flow.
void update_flow_table(FlowId flow, const GridPath& path, ControllerState& ctl);
void remove_flow_rules(FlowId flow, ControllerState& ctl);

/// Hands every satellite's rules to the satellite about to take its slot, so
/// that after advance_state() each position holds the same rules as before.
void transfer_flow_rules(ControllerState& ctl);
void transfer_flow_rules(const Constellation& c, ControllerState& ctl);

/// Follows next_hop rules from the flow's first hop. Returns the visited
/// satellites; stops at a satellite without a rule or after size() steps.
std::vector<SatelliteId> trace_flow(FlowId flow, SatelliteId from, const ControllerState& ctl);

struct PingMsg {
  std::string heartbeat = "alive";
  std::vector<SatelliteId> adjacency;
  SatelliteId id = 0;
  double timestamp = 0.0;
};

struct TopologyVerdict {
  enum class Kind { Nominal, IslFailure, SatelliteFailure };

  Kind kind = Kind::Nominal;
  std::vector<std::pair<SatelliteId, SatelliteId>> missing;  // IslFailure
  SatelliteId satellite = -1;                                // SatelliteFailure
};

/// Heartbeat with the live adjacency (failed ISLs and dead neighbours
/// omitted). A failed satellite sends nothing.
std::optional<PingMsg> send_ping(SatelliteId s, const NetworkView& net, double t);

/// Compares the reported adjacency with the precomputed one for the
/// topology state at t. Throws ProtocolError for unknown ids, oversize lists
/// or adjacency the topology cannot have.
TopologyVerdict process_ping(const PingMsg& msg, const Constellation& c, double t);

/// Satellites whose last ping is at least two periods old, ascending.
std::vector<SatelliteId> detect_silent_satellites(double t, const std::map<SatelliteId, double>& last_ping,
                                                  double period);

}  // namespace leoroute
