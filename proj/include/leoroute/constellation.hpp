#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace leoroute {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using SatelliteId = std::int32_t;
using EdgeId = std::int32_t;

/// Position on the (orbit, slot) torus. Slots are fixed orbital positions;
/// the satellite occupying a slot changes at every handover.
struct GridCoord {
  int orbit = 0;
  int slot = 0;

  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

enum class IslKind { IntraOrbit, InterOrbit };

enum class DistanceModel { Chord, Arc };

struct Neighbor {
  GridCoord coord;
  IslKind kind;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct ConstellationConfig {
  int num_orbits = 10;
  int sats_per_orbit = 10;
  double altitude_km = 2000.0;
  double earth_radius_km = 6378.137;
  double atm_height_km = 80.0;
  double inclination_deg = 86.4;
  // Walker phasing factor: plane j is advanced by 2*pi*F*j/(P*S).
  double phase_offset = 0.0;
  DistanceModel distance_model = DistanceModel::Arc;

  friend bool operator==(const ConstellationConfig&, const ConstellationConfig&) = default;
};

struct Satellite {
  SatelliteId id = 0;
  GridCoord coord;  // slot at t = 0
  double altitude_km = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// Iridium-like grid of circular orbits. Each satellite has six ISLs: two to
/// its slot neighbours in the same plane and four diagonals to (orbit +-1,
/// slot +-1). Both axes wrap.
///
/// Edges are indexed canonically: every position owns three "forward" edges,
/// (o, s+1), (o+1, s+1) and (o+1, s-1), so edge id = 3 * index(pos) + k.
///
/// Immutable after construction.
class Constellation {
 public:
  explicit Constellation(ConstellationConfig config);

  const ConstellationConfig& config() const { return config_; }
  int num_orbits() const { return config_.num_orbits; }
  int sats_per_orbit() const { return config_.sats_per_orbit; }
  int size() const { return config_.num_orbits * config_.sats_per_orbit; }
  int num_edges() const { return 3 * size(); }
  std::span<const Satellite> satellites() const { return satellites_; }

  double orbit_radius_km() const { return config_.earth_radius_km + config_.altitude_km; }
  double orbital_period_s() const { return orbital_period_s_; }
  /// Time for every satellite to advance one slot.
  double state_duration_s() const { return orbital_period_s_ / config_.sats_per_orbit; }
  /// Number of distinct topology states in one period (p).
  int period_states() const { return config_.sats_per_orbit; }

  GridCoord wrap(int orbit, int slot) const;
  bool contains(GridCoord c) const;
  int index(GridCoord c) const { return c.orbit * config_.sats_per_orbit + c.slot; }
  GridCoord coord_at(int index) const;

  SatelliteId occupant(GridCoord pos, int state) const;
  GridCoord position_of(SatelliteId id, int state) const;

  /// Earth-centred position of whatever satellite occupies `pos` at time t.
  Vec3 position_km(GridCoord pos, double t) const;
  Vec3 satellite_position_km(SatelliteId id, double t) const;

  /// Precomputed neighbour ids of `id` in topology state `state` (6 entries,
  /// same order as neighbors()).
  std::span<const SatelliteId> adjacency(int state, SatelliteId id) const;

  std::pair<GridCoord, GridCoord> edge_endpoints(EdgeId e) const;
  std::optional<EdgeId> edge_between(GridCoord a, GridCoord b) const;
  IslKind edge_kind(EdgeId e) const { return e % 3 == 0 ? IslKind::IntraOrbit : IslKind::InterOrbit; }
  std::array<EdgeId, 6> incident_edges(GridCoord c) const;

 private:
  ConstellationConfig config_;
  std::vector<Satellite> satellites_;
  double orbital_period_s_ = 0.0;
  std::vector<SatelliteId> adjacency_;  // [state][id][6]
};

Constellation build_constellation(const ConstellationConfig& config);

/// The six neighbours in a fixed order: intra (slot+1, slot-1), then
/// (orbit+1, slot+1), (orbit+1, slot-1), (orbit-1, slot+1), (orbit-1, slot-1).
std::array<Neighbor, 6> neighbors(GridCoord s, const Constellation& c);
std::array<Neighbor, 6> neighbors(GridCoord s, int num_orbits, int sats_per_orbit);

double inter_satellite_distance(GridCoord a, GridCoord b, const Constellation& c, double t);

/// Line-of-sight reach of one satellite above the atmosphere ceiling.
double max_line_of_sight_km(const Constellation& c);
bool is_visible_at_distance(double distance_km, const Constellation& c);
bool is_visible(SatelliteId a, SatelliteId b, const Constellation& c, double t);

int topology_state(double t, const Constellation& c);

}  // namespace leoroute
