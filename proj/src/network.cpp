#include "leoroute/network.hpp"

#include <cmath>
#include <stdexcept>

namespace leoroute {

NetworkView::NetworkView(std::shared_ptr<const Constellation> constellation,
                         std::vector<LinkMetrics> metrics, double cd_threshold)
    : constellation_(std::move(constellation)), cd_threshold_(cd_threshold) {
  if (!constellation_) throw std::invalid_argument("NetworkView: null constellation");
  if (static_cast<int>(metrics.size()) != constellation_->num_edges()) {
    throw std::invalid_argument("NetworkView: one LinkMetrics per edge required");
  }
  edges_.reserve(metrics.size());
  for (auto& m : metrics) {
    if (!(m.bandwidth_gbps > 0.0)) throw std::invalid_argument("NetworkView: bandwidth must be > 0");
    edges_.push_back(EdgeState{std::move(m)});
  }
  sat_down_.assign(static_cast<std::size_t>(constellation_->size()), 0);
}

int NetworkView::topology_state() const { return leoroute::topology_state(time_s(), *constellation_); }

double NetworkView::edge_cost(EdgeId e, const ScoreWeights& w, double max_cd) const {
  const EdgeState& es = edge(e);
  if (es.failed || es.congested_mark) return kMaxCost;
  if (congestion_degree(es.metrics) > max_cd) return kMaxCost;
  const double score = fitness_score(es.metrics, w, cd_threshold_);
  if (!(score > 0.0) || !std::isfinite(score)) return kMaxCost;
  return 1.0 / score;
}

void apply_flow_load(const GridPath& path, double demand_gbps, NetworkView& net) {
  for (EdgeId e : path_edges(path, net.constellation())) {
    double& load = net.edge(e).metrics.load_gbps;
    load += demand_gbps;
    if (load < 0.0) load = 0.0;
  }
}

double average_congestion(const NetworkView& net) {
  double sum = 0.0;
  int count = 0;
  for (const auto& es : net.edges()) {
    if (es.failed) continue;
    sum += congestion_degree(es.metrics);
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

double path_latency_ms(const GridPath& path, const NetworkView& net) {
  double total = 0.0;
  for (EdgeId e : path_edges(path, net.constellation())) total += net.latency_ms(e);
  return total;
}

double path_plr(const GridPath& path, const NetworkView& net) {
  double delivered = 1.0;
  for (EdgeId e : path_edges(path, net.constellation())) delivered *= 1.0 - net.plr(e);
  return 1.0 - delivered;
}

double path_cost(const GridPath& path, const NetworkView& net, const ScoreWeights& w, double max_cd) {
  double total = 0.0;
  for (EdgeId e : path_edges(path, net.constellation())) total += net.edge_cost(e, w, max_cd);
  return total;
}

bool path_usable(const GridPath& path, const NetworkView& net) {
  for (EdgeId e : path_edges(path, net.constellation())) {
    if (net.excluded(e)) return false;
  }
  return true;
}

}  // namespace leoroute
