#include "leoroute/link_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leoroute {

namespace {
// Floor for latency/jitter denominators; a perfectly steady link would
// otherwise score infinity.
constexpr double kMinDenominatorMs = 1e-3;
}  // namespace

void LatencySeries::push(double latency_ms) {
  if (!samples_.empty()) abs_delta_sum_ += std::abs(latency_ms - samples_.back());
  samples_.push_back(latency_ms);
}

double LatencySeries::jitter_ms() const {
  if (samples_.size() < 2) return 0.0;
  return abs_delta_sum_ / static_cast<double>(samples_.size() - 1);
}

void ScoreWeights::validate() const {
  for (double k : {k1, k2, k3, k4, k5}) {
    if (!(k >= 0.0)) throw std::invalid_argument("score weights must be >= 0");
  }
  if (k1 + k2 + k3 + k4 + k5 <= 0.0) {
    throw std::invalid_argument("at least one score weight must be > 0");
  }
}

double congestion_degree(const LinkMetrics& m) { return m.load_gbps / m.bandwidth_gbps; }

double propagation_delay_ms(double distance_km) {
  if (distance_km < 0.0) throw std::invalid_argument("propagation_delay_ms: negative distance");
  return distance_km / kSpeedOfLightKmPerS * 1000.0;
}

double packet_loss_ratio(const LinkMetrics& m) {
  if (m.packets_tx == 0) return m.initial_plr;
  const auto lost = m.packets_tx - std::min(m.packets_rx, m.packets_tx);
  return static_cast<double>(lost) / static_cast<double>(m.packets_tx);
}

double available_bandwidth(const LinkMetrics& m, double cd_threshold) {
  if (congestion_degree(m) > cd_threshold) return 0.0;
  return std::max(0.0, m.bandwidth_gbps - m.load_gbps);
}

double jitter_ms(std::span<const double> history, int start_time, int t) {
  const int window = t - start_time;
  if (history.size() < 2 || window <= 0) return 0.0;
  const auto last = std::min<std::size_t>(static_cast<std::size_t>(window), history.size() - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < last; ++k) sum += std::abs(history[k] - history[k + 1]);
  return sum / static_cast<double>(window);
}

double current_latency_ms(const LinkMetrics& m) {
  return m.latency.empty() ? propagation_delay_ms(m.distance_km) : m.latency.back();
}

double fitness_score(const LinkMetrics& m, const ScoreWeights& w, double ab_threshold) {
  auto ratio = [](double k, double x) { return k == 0.0 ? 0.0 : k / std::max(x, kMinDenominatorMs); };
  return w.k1 * available_bandwidth(m, ab_threshold) + ratio(w.k2, current_latency_ms(m)) +
         w.k3 * (1.0 - packet_loss_ratio(m)) + ratio(w.k4, m.latency.jitter_ms()) +
         w.k5 * m.stability_flag;
}

LinkScore link_score(const LinkMetrics& m, const ScoreWeights& w, double cd_threshold, bool failed) {
  LinkScore out;
  out.score = fitness_score(m, w, cd_threshold);
  const bool usable = !failed && congestion_degree(m) <= cd_threshold && out.score > 0.0 &&
                      std::isfinite(out.score);
  out.cost = usable ? 1.0 / out.score : kMaxCost;
  return out;
}

}  // namespace leoroute
