#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/simulation.hpp"

namespace resistnet {

/// Random geometric graph experiment: margin of the weakest edge, then
/// nominal / boundary / beyond-margin runs and two nonlinear runs on that edge.
struct ReproConfig {
  Index n = 75;
  double radius = 0.6;
  std::uint64_t seed = 6;
  double side = 3.0;
  std::uint64_t x0_seed = 1;
  double beyond_factor = 1.001;
  double unstable_a = -3.0;      // phi(y) = a y + sin(y) on the binding edge
  double stable_fraction = 0.75; // stable coupling keeps alpha at -fraction * margin
  std::size_t target_rows = 1000;
};

struct ReproRun {
  std::string name;
  double duration = 0.0;
  std::size_t steps = 0;
  RunSummary summary;
  Trajectory trajectory;
};

struct ReproResult {
  ReproConfig config;
  WeightedGraph graph;
  Index binding_edge = 0;
  Index argmax_resistance_edge = 0;  // from a pseudoinverse scan over all edges
  double binding_resistance = 0.0;
  double margin = 0.0;
  bool binding_is_bridge = false;
  double dt = 0.0;
  NonlinearCoupling stable_coupling;
  NonlinearCoupling unstable_coupling;
  bool stable_coupling_passes_sector = false;
  bool unstable_coupling_passes_sector = false;
  std::vector<ReproRun> runs;  // nominal, boundary, beyond, nonlinear_stable, nonlinear_unstable

  [[nodiscard]] const ReproRun& run(const std::string& name) const;
};

ReproResult run_repro(const ReproConfig& cfg);

/// Deterministic text summary (no timings).
std::string repro_summary_text(const ReproResult& r);

/// JSON report with sorted keys and 12-digit floats.
std::string repro_report_json(const ReproResult& r);

/// graph.json, report.json, summary.txt and one <run>.csv per run.
void write_repro_artifacts(const ReproResult& r, const std::filesystem::path& dir);

}  // namespace resistnet
