#include "leoroute/constellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace leoroute {

namespace {

constexpr double kEarthMu = 398600.4418;  // km^3 / s^2

int mod(int v, int m) {
  int r = v % m;
  return r < 0 ? r + m : r;
}

GridCoord forward(GridCoord p, int k, int orbits, int slots) {
  switch (k) {
    case 0: return {p.orbit, mod(p.slot + 1, slots)};
    case 1: return {mod(p.orbit + 1, orbits), mod(p.slot + 1, slots)};
    default: return {mod(p.orbit + 1, orbits), mod(p.slot - 1, slots)};
  }
}

void validate(const ConstellationConfig& cfg) {
  if (cfg.num_orbits < 3) {
    throw ConfigError("num_orbits must be >= 3 (got " + std::to_string(cfg.num_orbits) + ")");
  }
  if (cfg.sats_per_orbit < 3) {
    throw ConfigError("sats_per_orbit must be >= 3 (got " + std::to_string(cfg.sats_per_orbit) + ")");
  }
  if (!(cfg.altitude_km > 0.0)) throw ConfigError("altitude_km must be > 0");
  if (!(cfg.earth_radius_km > 0.0)) throw ConfigError("earth_radius_km must be > 0");
  if (!(cfg.atm_height_km >= 0.0)) throw ConfigError("atm_height_km must be >= 0");
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Constellation::Constellation(ConstellationConfig config) : config_(config) {
  validate(config_);
  const int n = size();
  satellites_.reserve(static_cast<std::size_t>(n));
  for (int o = 0; o < config_.num_orbits; ++o) {
    for (int s = 0; s < config_.sats_per_orbit; ++s) {
      satellites_.push_back({o * config_.sats_per_orbit + s, {o, s}, config_.altitude_km});
    }
  }
  const double a = orbit_radius_km();
  orbital_period_s_ = 2.0 * std::numbers::pi * std::sqrt(a * a * a / kEarthMu);

  const int p = period_states();
  adjacency_.resize(static_cast<std::size_t>(p) * n * 6);
  for (int st = 0; st < p; ++st) {
    for (SatelliteId id = 0; id < n; ++id) {
      const auto nbrs = neighbors(position_of(id, st), *this);
      for (int k = 0; k < 6; ++k) {
        adjacency_[(static_cast<std::size_t>(st) * n + id) * 6 + k] = occupant(nbrs[k].coord, st);
      }
    }
  }
}

GridCoord Constellation::wrap(int orbit, int slot) const {
  return {mod(orbit, config_.num_orbits), mod(slot, config_.sats_per_orbit)};
}

bool Constellation::contains(GridCoord c) const {
  return c.orbit >= 0 && c.orbit < config_.num_orbits && c.slot >= 0 &&
         c.slot < config_.sats_per_orbit;
}

GridCoord Constellation::coord_at(int index) const {
  return {index / config_.sats_per_orbit, index % config_.sats_per_orbit};
}

SatelliteId Constellation::occupant(GridCoord pos, int state) const {
  return pos.orbit * config_.sats_per_orbit + mod(pos.slot - state, config_.sats_per_orbit);
}

GridCoord Constellation::position_of(SatelliteId id, int state) const {
  const GridCoord home = coord_at(id);
  return {home.orbit, mod(home.slot + state, config_.sats_per_orbit)};
}

Vec3 Constellation::satellite_position_km(SatelliteId id, double t) const {
  const GridCoord home = coord_at(id);
  const double two_pi = 2.0 * std::numbers::pi;
  const double P = config_.num_orbits;
  const double S = config_.sats_per_orbit;
  const double raan = two_pi * home.orbit / P;
  const double u = two_pi * home.slot / S + two_pi * config_.phase_offset * home.orbit / (P * S) +
                   two_pi * t / orbital_period_s_;
  const double inc = config_.inclination_deg * std::numbers::pi / 180.0;
  const double r = orbit_radius_km();
  const double cu = std::cos(u), su = std::sin(u);
  const double cr = std::cos(raan), sr = std::sin(raan);
  return {r * (cu * cr - su * std::cos(inc) * sr), r * (cu * sr + su * std::cos(inc) * cr),
          r * su * std::sin(inc)};
}

Vec3 Constellation::position_km(GridCoord pos, double t) const {
  return satellite_position_km(occupant(pos, topology_state(t, *this)), t);
}

std::span<const SatelliteId> Constellation::adjacency(int state, SatelliteId id) const {
  const std::size_t base = (static_cast<std::size_t>(mod(state, period_states())) * size() + id) * 6;
  return {adjacency_.data() + base, 6};
}

std::pair<GridCoord, GridCoord> Constellation::edge_endpoints(EdgeId e) const {
  const GridCoord a = coord_at(e / 3);
  return {a, forward(a, e % 3, config_.num_orbits, config_.sats_per_orbit)};
}

std::optional<EdgeId> Constellation::edge_between(GridCoord a, GridCoord b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  for (int k = 0; k < 3; ++k) {
    if (forward(a, k, config_.num_orbits, config_.sats_per_orbit) == b) return 3 * index(a) + k;
    if (forward(b, k, config_.num_orbits, config_.sats_per_orbit) == a) return 3 * index(b) + k;
  }
  return std::nullopt;
}

std::array<EdgeId, 6> Constellation::incident_edges(GridCoord c) const {
  const int base = 3 * index(c);
  return {base,
          base + 1,
          base + 2,
          3 * index(wrap(c.orbit, c.slot - 1)) + 0,
          3 * index(wrap(c.orbit - 1, c.slot - 1)) + 1,
          3 * index(wrap(c.orbit - 1, c.slot + 1)) + 2};
}

Constellation build_constellation(const ConstellationConfig& config) { return Constellation(config); }

std::array<Neighbor, 6> neighbors(GridCoord s, int num_orbits, int sats_per_orbit) {
  auto at = [&](int dorbit, int dslot) {
    return GridCoord{mod(s.orbit + dorbit, num_orbits), mod(s.slot + dslot, sats_per_orbit)};
  };
  return {Neighbor{at(0, 1), IslKind::IntraOrbit},  Neighbor{at(0, -1), IslKind::IntraOrbit},
          Neighbor{at(1, 1), IslKind::InterOrbit},  Neighbor{at(1, -1), IslKind::InterOrbit},
          Neighbor{at(-1, 1), IslKind::InterOrbit}, Neighbor{at(-1, -1), IslKind::InterOrbit}};
}

std::array<Neighbor, 6> neighbors(GridCoord s, const Constellation& c) {
  return neighbors(s, c.num_orbits(), c.sats_per_orbit());
}

double inter_satellite_distance(GridCoord a, GridCoord b, const Constellation& c, double t) {
  if (a == b) return 0.0;
  if (c.config().distance_model == DistanceModel::Arc && a.orbit == b.orbit) {
    const int S = c.sats_per_orbit();
    const int d = mod(a.slot - b.slot, S);
    const int steps = std::min(d, S - d);
    return c.orbit_radius_km() * 2.0 * std::numbers::pi * steps / S;
  }
  return distance(c.position_km(a, t), c.position_km(b, t));
}

double max_line_of_sight_km(const Constellation& c) {
  const auto& cfg = c.config();
  const double reach = cfg.earth_radius_km + cfg.altitude_km;
  const double ceiling = cfg.earth_radius_km + cfg.atm_height_km;
  if (reach <= ceiling) {
    throw GeometryError("satellite altitude is at or below the atmosphere ceiling");
  }
  return std::sqrt(reach * reach - ceiling * ceiling);
}

bool is_visible_at_distance(double distance_km, const Constellation& c) {
  // Equal altitudes, so L_Xmax == L_Ymax.
  return distance_km < 2.0 * max_line_of_sight_km(c);
}

bool is_visible(SatelliteId a, SatelliteId b, const Constellation& c, double t) {
  if (a < 0 || b < 0 || a >= c.size() || b >= c.size()) {
    throw std::invalid_argument("unknown satellite id");
  }
  const double d = distance(c.satellite_position_km(a, t), c.satellite_position_km(b, t));
  return is_visible_at_distance(d, c);
}

int topology_state(double t, const Constellation& c) {
  if (t < 0.0) throw std::invalid_argument("topology_state: t must be >= 0");
  const auto step = static_cast<long long>(std::floor(t / c.state_duration_s()));
  return static_cast<int>(step % c.period_states());
}

}  // namespace leoroute
