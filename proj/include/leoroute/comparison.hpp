#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "leoroute/sim_engine.hpp"

namespace leoroute {

struct ComparisonResult {
  std::vector<Summary> summaries;
  std::vector<MetricsReport> reports;
  std::uint64_t workload_hash = 0;
  bool complete = false;
};

/// Runs the scenario's workload through every configured router on fresh
/// copies of the initial network and writes per-flow, per-tick, plot and
/// summary CSVs plus a MANIFEST into `out_dir`. A failing run stops the
/// comparison; files already written stay and the MANIFEST says so.
ComparisonResult run_comparison(const Scenario& sc, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace leoroute
