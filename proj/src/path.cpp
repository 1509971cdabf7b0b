#include "leoroute/path.hpp"

#include <algorithm>
#include <stdexcept>

namespace leoroute {

std::vector<EdgeId> path_edges(const GridPath& p, const Constellation& c) {
  std::vector<EdgeId> out;
  if (p.hops.size() < 2) return out;
  out.reserve(p.hops.size() - 1);
  for (std::size_t i = 0; i + 1 < p.hops.size(); ++i) {
    const auto e = c.edge_between(p.hops[i], p.hops[i + 1]);
    if (!e) throw std::invalid_argument("path hops are not neighbours");
    out.push_back(*e);
  }
  return out;
}

GridPath make_path(std::vector<GridCoord> hops, const Constellation& c) {
  GridPath p;
  p.hops = std::move(hops);
  for (std::size_t i = 0; i + 1 < p.hops.size(); ++i) {
    const auto e = c.edge_between(p.hops[i], p.hops[i + 1]);
    if (!e) throw std::invalid_argument("path hops are not neighbours");
    if (c.edge_kind(*e) == IslKind::IntraOrbit) {
      ++p.n;
    } else {
      ++p.m;
    }
  }
  return p;
}

bool is_valid_path(const GridPath& p, const Constellation& c) {
  if (p.hops.empty()) return false;
  int m = 0, n = 0;
  for (std::size_t i = 0; i < p.hops.size(); ++i) {
    if (!c.contains(p.hops[i])) return false;
    if (std::find(p.hops.begin(), p.hops.begin() + static_cast<long>(i), p.hops[i]) !=
        p.hops.begin() + static_cast<long>(i)) {
      return false;
    }
    if (i + 1 < p.hops.size()) {
      const auto e = c.edge_between(p.hops[i], p.hops[i + 1]);
      if (!e) return false;
      (c.edge_kind(*e) == IslKind::IntraOrbit ? n : m)++;
    }
  }
  return m == p.m && n == p.n && static_cast<int>(p.hops.size()) == m + n + 1;
}

}  // namespace leoroute
