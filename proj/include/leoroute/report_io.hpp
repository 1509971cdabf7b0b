#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "leoroute/sim_engine.hpp"

namespace leoroute {

inline constexpr const char* kPerFlowHeader =
    "flow_id,arrival_s,src,dst,qos_enabled,satisfied,hops,routing_time_ms,latency_ms,plr";
inline constexpr const char* kPerTickHeader = "t_s,avg_cd,flows_active";
inline constexpr const char* kSummaryHeader =
    "scheme,mean_routing_time_ms,mean_latency_ms,mean_plr,satisfaction_ratio";

/// Rows in flow_id order. latency_ms and plr are empty for flows that were
/// never installed.
void write_per_flow_csv(const MetricsReport& r, std::ostream& out);
void write_per_tick_csv(const MetricsReport& r, std::ostream& out);
void write_summary_csv(std::span<const Summary> rows, std::ostream& out);

/// Trailing mean over the last `window` samples; the first window-1 entries
/// average the prefix seen so far.
std::vector<double> moving_average(std::span<const double> series, int window);

/// Long-form series for external plotting, one file per metric, named
/// plot_<metric>_<scheme>.csv. Throws std::runtime_error if a file cannot
/// be written.
void emit_plot_data(const MetricsReport& r, const std::filesystem::path& dir, int window);

/// FNV-1a over a canonical text form of every request.
std::uint64_t workload_hash(std::span<const FlowRequest> flows);

}  // namespace leoroute
