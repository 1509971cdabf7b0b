#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace leoroute {

/// Sentinel cost for congested or failed links.
inline constexpr double kMaxCost = 1e9;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;
/// CD above which a link is congested and its available bandwidth drops to 0.
inline constexpr double kDefaultCdThreshold = 0.8;

/// Per-tick latency samples of one link, starting at `start_tick`. Keeps a
/// running sum of absolute consecutive differences so jitter is O(1).
class LatencySeries {
 public:
  LatencySeries() = default;
  explicit LatencySeries(int start_tick) : start_tick_(start_tick) {}

  void push(double latency_ms);
  int start_tick() const { return start_tick_; }
  std::span<const double> samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  double back() const { return samples_.back(); }
  /// Mean absolute variation over the recorded window; 0 with < 2 samples.
  double jitter_ms() const;

 private:
  int start_tick_ = 0;
  std::vector<double> samples_;
  double abs_delta_sum_ = 0.0;
};

struct LinkMetrics {
  double bandwidth_gbps = 1.0;
  double load_gbps = 0.0;
  std::uint64_t packets_tx = 0;
  std::uint64_t packets_rx = 0;
  double initial_plr = 0.0;  // reported until any packet has been sent
  LatencySeries latency;
  int stability_flag = 0;
  double distance_km = 0.0;
};

struct ScoreWeights {
  double k1 = 0.55;  // available bandwidth (Gbps)
  double k2 = 0.30;  // 1 / latency (ms)
  double k3 = 0.15;  // 1 - PLR
  double k4 = 0.0;   // 1 / jitter (ms)
  double k5 = 0.0;   // stability flag

  void validate() const;
  friend bool operator==(const ScoreWeights&, const ScoreWeights&) = default;
};

struct LinkScore {
  double score = 0.0;
  double cost = kMaxCost;
};

double congestion_degree(const LinkMetrics& m);
double propagation_delay_ms(double distance_km);
double packet_loss_ratio(const LinkMetrics& m);
double available_bandwidth(const LinkMetrics& m, double cd_threshold = kDefaultCdThreshold);

/// Mean absolute latency variation. `history[k]` is the sample at tick
/// start_time + k; the sum runs over ticks [start_time, t).
double jitter_ms(std::span<const double> history, int start_time, int t);

/// Latest latency sample, or the propagation delay if nothing is recorded yet.
double current_latency_ms(const LinkMetrics& m);

/// Raw fitness score. Zero-weight terms contribute nothing even when their
/// denominator is zero.
double fitness_score(const LinkMetrics& m, const ScoreWeights& w, double ab_threshold);

/// Score and cost of one link. Congested (CD > cd_threshold), failed, or
/// non-positive-score links cost kMaxCost.
LinkScore link_score(const LinkMetrics& m, const ScoreWeights& w,
                     double cd_threshold = kDefaultCdThreshold, bool failed = false);

}  // namespace leoroute
