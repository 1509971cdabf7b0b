#include "leoroute/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace leoroute {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error(p.string() + ": cannot open for writing");
  return out;
}

void write_by_hops(const MetricsReport& r, const std::filesystem::path& p, const char* column,
                   double FlowRecord::*field) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& f : r.flows) {
    if (!f.installed) continue;
    auto& [sum, n] = acc[f.hops];
    sum += f.*field;
    ++n;
  }
  auto out = open_out(p);
  out << "hops," << column << ",flows\n";
  for (const auto& [hops, v] : acc) out << hops << ',' << fixed(v.first / v.second, 8) << ',' << v.second << '\n';
}

void write_ma(const MetricsReport& r, const std::filesystem::path& p, const char* column,
              double FlowRecord::*field, int window) {
  std::vector<double> series;
  std::vector<int> when;
  for (const auto& f : r.flows) {
    if (!f.installed) continue;
    series.push_back(f.*field);
    when.push_back(f.arrival_s);
  }
  const auto ma = moving_average(series, window);
  auto out = open_out(p);
  out << "arrival_s," << column << '\n';
  for (std::size_t i = 0; i < ma.size(); ++i) out << when[i] << ',' << fixed(ma[i], 8) << '\n';
}

}  // namespace

void write_per_flow_csv(const MetricsReport& r, std::ostream& out) {
  out << kPerFlowHeader << '\n';
  for (const auto& f : r.flows) {
    out << f.flow_id << ',' << f.arrival_s << ',' << f.src << ',' << f.dst << ',' << (f.qos_enabled ? 1 : 0) << ','
        << (f.satisfied ? 1 : 0) << ',' << f.hops << ',' << fixed(f.routing_time_ms) << ',';
    if (f.installed) out << fixed(f.latency_ms) << ',' << fixed(f.plr, 8);
    else out << ',';
    out << '\n';
  }
}

void write_per_tick_csv(const MetricsReport& r, std::ostream& out) {
  out << kPerTickHeader << '\n';
  for (const auto& t : r.ticks) out << t.t_s << ',' << fixed(t.avg_cd, 8) << ',' << t.flows_active << '\n';
}

void write_summary_csv(std::span<const Summary> rows, std::ostream& out) {
  out << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    out << scheme_name(s.scheme) << ',' << fixed(s.mean_routing_time_ms) << ',' << fixed(s.mean_latency_ms) << ','
        << fixed(s.mean_plr, 8) << ',';
    if (s.satisfaction_ratio) out << fixed(*s.satisfaction_ratio);
    out << '\n';
  }
}

std::vector<double> moving_average(std::span<const double> series, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  std::vector<double> out;
  out.reserve(series.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    sum += series[i];
    if (i >= static_cast<std::size_t>(window)) sum -= series[i - static_cast<std::size_t>(window)];
    const auto n = std::min(i + 1, static_cast<std::size_t>(window));
    out.push_back(sum / static_cast<double>(n));
  }
  return out;
}

void emit_plot_data(const MetricsReport& r, const std::filesystem::path& dir, int window) {
  const std::string scheme(scheme_name(r.scheme));
  {
    auto out = open_out(dir / ("plot_avg_cd_" + scheme + ".csv"));
    out << "t_s,avg_cd\n";
    for (const auto& t : r.ticks) out << t.t_s << ',' << fixed(t.avg_cd, 8) << '\n';
  }
  write_by_hops(r, dir / ("plot_routing_time_vs_hops_" + scheme + ".csv"), "mean_routing_time_ms",
                &FlowRecord::routing_time_ms);
  write_by_hops(r, dir / ("plot_latency_vs_hops_" + scheme + ".csv"), "mean_latency_ms", &FlowRecord::latency_ms);
  write_by_hops(r, dir / ("plot_plr_vs_hops_" + scheme + ".csv"), "mean_plr", &FlowRecord::plr);
  write_ma(r, dir / ("plot_latency_ma_" + scheme + ".csv"), "latency_ms_ma", &FlowRecord::latency_ms, window);
  write_ma(r, dir / ("plot_plr_ma_" + scheme + ".csv"), "plr_ma", &FlowRecord::plr, window);
}

std::uint64_t workload_hash(std::span<const FlowRequest> flows) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  char buf[256];
  for (const auto& f : flows) {
    const auto& c = f.constraints;
    std::snprintf(buf, sizeof buf, "%d|%d|%d|%d|%.17g|%d|%.17g|%.17g|%.17g|%.17g\n", f.flow_id, f.arrival_time, f.src,
                  f.dst, f.demand_gbps, c.qos_enabled ? 1 : 0, c.min_bandwidth_gbps, c.max_delay_ms, c.max_jitter_ms,
                  c.max_plr);
    mix(buf);
  }
  return h;
}

}  // namespace leoroute
