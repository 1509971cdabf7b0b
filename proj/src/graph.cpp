#include "leoroute/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace leoroute::graph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Label {
  double cost = kInf;
  int hops = 0;
};

bool better(const Label& a, const Label& b) {
  if (near(a.cost, b.cost)) return a.hops < b.hops;
  return a.cost < b.cost;
}

bool arc_allowed(int u, const Arc& a, const Filter& f) {
  if (!(a.weight < f.absent_at)) return false;
  if (f.banned_nodes && ((*f.banned_nodes)[static_cast<std::size_t>(a.to)] ||
                         (*f.banned_nodes)[static_cast<std::size_t>(u)])) {
    return false;
  }
  if (f.banned_arcs) {
    for (const auto& [x, y] : *f.banned_arcs) {
      if (x == u && y == a.to) return false;
    }
  }
  return true;
}

double arc_weight(const Digraph& g, int u, int v) {
  double best = kInf;
  for (const Arc& a : g.out(u)) {
    if (a.to == v) best = std::min(best, a.weight);
  }
  return best;
}

bool lex_less(const Path& a, const Path& b, std::span<const int> keys) {
  if (!near(a.cost, b.cost)) return a.cost < b.cost;
  if (a.hops() != b.hops()) return a.hops() < b.hops();
  return std::lexicographical_compare(
      a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
      [&](int x, int y) { return keys[static_cast<std::size_t>(x)] < keys[static_cast<std::size_t>(y)]; });
}

}  // namespace

std::optional<Path> shortest_path(const Digraph& g, int src, int dst, std::span<const int> keys,
                                  const Filter& filter) {
  const int n = g.size();
  if (filter.banned_nodes && ((*filter.banned_nodes)[static_cast<std::size_t>(src)] ||
                              (*filter.banned_nodes)[static_cast<std::size_t>(dst)])) {
    return std::nullopt;
  }
  // Labels are distances *to* dst so the forward walk can pick the
  // lexicographically smallest successor among optimal ones.
  std::vector<Label> to_dst(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  using Entry = std::pair<std::pair<double, int>, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  to_dst[static_cast<std::size_t>(dst)] = {0.0, 0};
  heap.push({{0.0, 0}, dst});
  while (!heap.empty()) {
    const auto [label, v] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(v)]) continue;
    done[static_cast<std::size_t>(v)] = 1;
    if (v == src) break;
    const Label lv = to_dst[static_cast<std::size_t>(v)];
    for (const Arc& back : g.in(v)) {
      const int u = back.to;
      if (done[static_cast<std::size_t>(u)]) continue;
      if (!arc_allowed(u, Arc{v, back.weight}, filter)) continue;
      const Label cand{lv.cost + back.weight, lv.hops + 1};
      if (better(cand, to_dst[static_cast<std::size_t>(u)])) {
        to_dst[static_cast<std::size_t>(u)] = cand;
        heap.push({{cand.cost, cand.hops}, u});
      }
    }
  }
  if (!done[static_cast<std::size_t>(src)]) return std::nullopt;

  Path path;
  path.cost = to_dst[static_cast<std::size_t>(src)].cost;
  path.nodes.push_back(src);
  int u = src;
  while (u != dst) {
    const Label lu = to_dst[static_cast<std::size_t>(u)];
    int pick = -1;
    int fallback = -1;
    Label fallback_label;
    for (const Arc& a : g.out(u)) {
      if (!done[static_cast<std::size_t>(a.to)] || !arc_allowed(u, a, filter)) continue;
      const Label lv = to_dst[static_cast<std::size_t>(a.to)];
      if (lv.hops + 1 == lu.hops && near(a.weight + lv.cost, lu.cost)) {
        if (pick < 0 || keys[static_cast<std::size_t>(a.to)] < keys[static_cast<std::size_t>(pick)]) {
          pick = a.to;
        }
      }
      const Label via{a.weight + lv.cost, lv.hops + 1};
      if (lv.hops < lu.hops && (fallback < 0 || better(via, fallback_label))) {
        fallback = a.to;
        fallback_label = via;
      }
    }
    if (pick < 0) pick = fallback;
    if (pick < 0) return std::nullopt;
    path.nodes.push_back(pick);
    u = pick;
  }
  return path;
}

std::vector<Path> k_shortest_paths(const Digraph& g, int src, int dst, int k,
                                   std::span<const int> keys, const Filter& filter) {
  std::vector<Path> accepted;
  if (k < 1) return accepted;
  auto first = shortest_path(g, src, dst, keys, filter);
  if (!first) return accepted;
  accepted.push_back(std::move(*first));

  std::vector<Path> candidates;
  const int n = g.size();
  auto known = [&](const std::vector<int>& nodes) {
    for (const auto& p : accepted) {
      if (p.nodes == nodes) return true;
    }
    for (const auto& p : candidates) {
      if (p.nodes == nodes) return true;
    }
    return false;
  };

  while (static_cast<int>(accepted.size()) < k) {
    const Path prev = accepted.back();
    double root_cost = 0.0;
    for (std::size_t j = 0; j + 1 < prev.nodes.size(); ++j) {
      const int spur = prev.nodes[j];
      if (j > 0) root_cost += arc_weight(g, prev.nodes[j - 1], prev.nodes[j]);

      std::vector<std::pair<int, int>> banned_arcs;
      if (filter.banned_arcs) banned_arcs = *filter.banned_arcs;
      for (const auto& p : accepted) {
        if (p.nodes.size() > j + 1 && std::equal(prev.nodes.begin(), prev.nodes.begin() + static_cast<long>(j) + 1,
                                                 p.nodes.begin())) {
          banned_arcs.emplace_back(p.nodes[j], p.nodes[j + 1]);
        }
      }
      std::vector<char> banned_nodes = filter.banned_nodes ? *filter.banned_nodes
                                                           : std::vector<char>(static_cast<std::size_t>(n), 0);
      for (std::size_t r = 0; r < j; ++r) banned_nodes[static_cast<std::size_t>(prev.nodes[r])] = 1;

      Filter spur_filter{&banned_nodes, &banned_arcs, filter.absent_at};
      auto spur_path = shortest_path(g, spur, dst, keys, spur_filter);
      if (!spur_path) continue;
      Path total;
      total.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + static_cast<long>(j));
      total.nodes.insert(total.nodes.end(), spur_path->nodes.begin(), spur_path->nodes.end());
      total.cost = root_cost + spur_path->cost;
      if (!known(total.nodes)) candidates.push_back(std::move(total));
    }
    if (candidates.empty()) break;
    auto best = std::min_element(candidates.begin(), candidates.end(),
                                 [&](const Path& a, const Path& b) { return lex_less(a, b, keys); });
    accepted.push_back(std::move(*best));
    candidates.erase(best);
  }
  return accepted;
}

}  // namespace leoroute::graph
