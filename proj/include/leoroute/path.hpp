#pragma once

#include <vector>

#include "leoroute/constellation.hpp"

namespace leoroute {

/// A hop sequence on the grid with its diagonal (m) and longitudinal (n)
/// ISL counts.
struct GridPath {
  std::vector<GridCoord> hops;
  int m = 0;
  int n = 0;

  int hop_count() const { return hops.empty() ? 0 : static_cast<int>(hops.size()) - 1; }
  bool empty() const { return hops.empty(); }
  friend bool operator==(const GridPath&, const GridPath&) = default;
};

/// Edge ids along the path. Throws std::invalid_argument if two consecutive
/// hops are not neighbours.
std::vector<EdgeId> path_edges(const GridPath& p, const Constellation& c);

/// Recounts m and n from the hops.
GridPath make_path(std::vector<GridCoord> hops, const Constellation& c);

/// Checks the GridPath invariants: neighbouring hops, no repeats, counts match.
bool is_valid_path(const GridPath& p, const Constellation& c);

}  // namespace leoroute
