#include <doctest.h>

#include <algorithm>
#include <random>

#include "leoroute/graph.hpp"
#include "oracles.hpp"

using namespace leoroute::graph;

namespace {

struct Grid {
  Digraph g{0};
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<double>> w;  // dense weights
  std::vector<int> keys;
};

// Random 4-neighbour grid with symmetric weights.
Grid random_grid(int rows, int cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.5, 5.0);
  const int n = rows * cols;
  Grid out;
  out.g = Digraph(n);
  out.adj.resize(static_cast<std::size_t>(n));
  out.w.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int v = 0; v < n; ++v) out.keys.push_back(v);
  auto link = [&](int a, int b) {
    const double x = u(rng);
    out.g.add_edge(a, b, x);
    out.adj[static_cast<std::size_t>(a)].push_back(b);
    out.adj[static_cast<std::size_t>(b)].push_back(a);
    out.w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = x;
    out.w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = x;
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) link(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) link(r * cols + c, (r + 1) * cols + c);
    }
  }
  return out;
}

double cost_of(const Grid& g, const std::vector<int>& p) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) c += g.w[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(p[i + 1])];
  return c;
}

}  // namespace

TEST_CASE("shortest path on a line and on unreachable targets") {
  Digraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  const std::vector<int> keys{0, 1, 2, 3};
  const auto p = shortest_path(g, 0, 2, keys);
  REQUIRE(p);
  CHECK(p->nodes == std::vector<int>{0, 1, 2});
  CHECK(p->cost == 2.0);
  CHECK_FALSE(shortest_path(g, 0, 3, keys));
  const auto self = shortest_path(g, 1, 1, keys);
  REQUIRE(self);
  CHECK(self->hops() == 0);
}

TEST_CASE("ties prefer fewer hops, then smaller keys") {
  Digraph g(5);
  g.add_arc(0, 1, 1.0);
  g.add_arc(1, 4, 1.0);
  g.add_arc(0, 2, 1.0);
  g.add_arc(2, 4, 1.0);
  g.add_arc(0, 3, 0.5);
  g.add_arc(3, 2, 0.5);
  std::vector<int> keys{0, 1, 2, 3, 4};
  CHECK(shortest_path(g, 0, 4, keys)->nodes == std::vector<int>{0, 1, 4});
  keys = {0, 9, 2, 3, 4};
  CHECK(shortest_path(g, 0, 4, keys)->nodes == std::vector<int>{0, 2, 4});
}

TEST_CASE("absent_at removes expensive arcs") {
  Digraph g(3);
  g.add_arc(0, 2, 1e9);
  g.add_arc(0, 1, 5.0);
  g.add_arc(1, 2, 5.0);
  const std::vector<int> keys{0, 1, 2};
  CHECK(shortest_path(g, 0, 2, keys)->cost == doctest::Approx(10.0));
  Filter f;
  f.absent_at = 1e9;
  Digraph h(2);
  h.add_arc(0, 1, 1e9);
  CHECK_FALSE(shortest_path(h, 0, 1, std::vector<int>{0, 1}, f));
}

TEST_CASE("shortest path matches exhaustive search on random 4x4 grids") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid g = random_grid(4, 4, rng);
    const int src = static_cast<int>(rng() % 16), dst = static_cast<int>(rng() % 16);
    double best = 1e300;
    for (const auto& p : oracle::simple_paths(g.adj, src, dst)) best = std::min(best, cost_of(g, p));
    const auto got = shortest_path(g.g, src, dst, g.keys);
    REQUIRE(got);
    CHECK(got->cost == doctest::Approx(best).epsilon(1e-12));
    CHECK(cost_of(g, got->nodes) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("Yen's k shortest paths against enumeration") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const Grid g = random_grid(4, 4, rng);
    const int src = 0, dst = 15;
    auto all = oracle::simple_paths(g.adj, src, dst);
    std::vector<double> costs;
    for (const auto& p : all) costs.push_back(cost_of(g, p));
    std::sort(costs.begin(), costs.end());
    const auto got = k_shortest_paths(g.g, src, dst, 4, g.keys);
    REQUIRE(got.size() == 4);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].cost == doctest::Approx(costs[i]).epsilon(1e-12));
      CHECK(cost_of(g, got[i].nodes) == doctest::Approx(got[i].cost).epsilon(1e-12));
      if (i > 0) CHECK(got[i].cost >= got[i - 1].cost);
      std::vector<int> sorted = got[i].nodes;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      for (std::size_t j = 0; j < i; ++j) CHECK(got[j].nodes != got[i].nodes);
    }
  }
}

TEST_CASE("Yen stops when paths run out") {
  // Exactly three simple paths from 0 to 4.
  Digraph g(5);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 4, 1.0);
  g.add_edge(0, 2, 2.0);
  g.add_edge(2, 4, 2.0);
  g.add_edge(0, 3, 3.0);
  g.add_edge(3, 4, 3.0);
  const auto got = k_shortest_paths(g, 0, 4, 5, std::vector<int>{0, 1, 2, 3, 4});
  REQUIRE(got.size() == 3);
  CHECK(got[0].cost == 2.0);
  CHECK(got[1].cost == 4.0);
  CHECK(got[2].cost == 6.0);
  CHECK(k_shortest_paths(g, 0, 4, 1, std::vector<int>{0, 1, 2, 3, 4}).front().nodes ==
        shortest_path(g, 0, 4, std::vector<int>{0, 1, 2, 3, 4})->nodes);
}
