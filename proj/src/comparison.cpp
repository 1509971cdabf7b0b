#include "leoroute/comparison.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "leoroute/report_io.hpp"
#include "leoroute/scenario_io.hpp"

namespace leoroute {

namespace {

void write_manifest(const std::filesystem::path& dir, const Scenario& sc, const ComparisonResult& res,
                    const std::string& error) {
  std::ofstream out(dir / "MANIFEST");
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << res.workload_hash;
  out << "status: " << (res.complete ? "complete" : "incomplete") << '\n';
  if (!error.empty()) out << "error: " << error << '\n';
  out << "seed: " << sc.seed << '\n';
  out << "workload_hash: " << hash.str() << '\n';
  out << "routers:";
  for (const auto& s : res.summaries) out << ' ' << scheme_name(s.scheme);
  out << "\nscenario:\n" << dump_scenario(sc);
}

}  // namespace

ComparisonResult run_comparison(const Scenario& sc, const std::filesystem::path& out_dir, std::ostream& log) {
  ComparisonResult res;
  std::filesystem::create_directories(out_dir);
  std::string error;
  try {
    std::vector<FlowRequest> workload;
    if (sc.workload.n_flows > 0) {
      const Constellation c = build_constellation(sc.constellation);
      workload = generate_workload(sc.seed, sc.workload, c.size());
    }
    res.workload_hash = workload_hash(workload);
    for (Scheme scheme : sc.routing.routers) {
      const std::string name(scheme_name(scheme));
      log << "running " << name << " (" << workload.size() << " flows)\n";
      MetricsReport report = run(sc, scheme, workload);
      {
        std::ofstream f(out_dir / ("per_flow_" + name + ".csv"));
        write_per_flow_csv(report, f);
      }
      {
        std::ofstream f(out_dir / ("per_tick_" + name + ".csv"));
        write_per_tick_csv(report, f);
      }
      emit_plot_data(report, out_dir, sc.output.window_s);
      res.summaries.push_back(summarize(report));
      res.reports.push_back(std::move(report));
    }
    std::ofstream f(out_dir / "summary.csv");
    write_summary_csv(res.summaries, f);
    res.complete = true;
  } catch (const std::exception& e) {
    error = e.what();
    log << "error: " << error << '\n';
  }
  write_manifest(out_dir, sc, res, error);
  return res;
}

}  // namespace leoroute
