#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace leoroute::graph {

struct Arc {
  int to = 0;
  double weight = 0.0;
};

/// Small directed graph with forward and reverse adjacency.
class Digraph {
 public:
  explicit Digraph(int n) : out_(static_cast<std::size_t>(n)), in_(static_cast<std::size_t>(n)) {}

  void add_arc(int u, int v, double w) {
    out_[static_cast<std::size_t>(u)].push_back({v, w});
    in_[static_cast<std::size_t>(v)].push_back({u, w});
  }
  void add_edge(int u, int v, double w) {
    add_arc(u, v, w);
    add_arc(v, u, w);
  }

  int size() const { return static_cast<int>(out_.size()); }
  std::span<const Arc> out(int u) const { return out_[static_cast<std::size_t>(u)]; }
  std::span<const Arc> in(int u) const { return in_[static_cast<std::size_t>(u)]; }

 private:
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

struct Path {
  std::vector<int> nodes;
  double cost = 0.0;

  int hops() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
};

struct Filter {
  const std::vector<char>* banned_nodes = nullptr;
  const std::vector<std::pair<int, int>>* banned_arcs = nullptr;
  /// Arcs with weight >= this are treated as absent.
  double absent_at = std::numeric_limits<double>::infinity();
};

/// Minimum-cost path from src to dst. Ties (relative 1e-12) are broken by
/// fewer hops, then by the lexicographically smallest sequence of `keys`.
std::optional<Path> shortest_path(const Digraph& g, int src, int dst, std::span<const int> keys,
                                  const Filter& filter = {});

/// Yen's loop-free k shortest paths in nondecreasing cost order.
std::vector<Path> k_shortest_paths(const Digraph& g, int src, int dst, int k,
                                   std::span<const int> keys, const Filter& filter = {});

}  // namespace leoroute::graph
