#include "resistnet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "resistnet/errors.hpp"
#include "resistnet/format.hpp"
#include "resistnet/graph_io.hpp"
#include "resistnet/resistance.hpp"
#include "resistnet/rgg.hpp"
#include "resistnet/robustness.hpp"
#include "resistnet/spectral.hpp"

namespace resistnet {
namespace {

constexpr double kStepFraction = 1.5;   // dt = kStepFraction / (largest guard radius)
constexpr double kSettleFactor = 40.0;  // settle time = kSettleFactor / slowest decay rate
constexpr double kGrowthSafety = 1.25;

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Spectrum spectrum_of(const Eigen::MatrixXd& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Smallest eigenvalue that is clearly positive.
double slowest_decay(const Eigen::VectorXd& values) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values(i) > kDefaultTol * scale) return values(i);
  return 0.0;
}

// Time for the most unstable mode to carry x0 past the divergence threshold.
double growth_time(const Spectrum& s, const Eigen::VectorXd& x0) {
  const double rate = -s.values(0);
  if (!(rate > 0.0)) return 0.0;
  const double projection = std::max(std::abs(s.vectors.col(0).dot(x0)), 1e-300);
  const double limit = kDivergenceFactor * (1.0 + x0.norm());
  return kGrowthSafety * std::max(0.0, std::log(limit) - std::log(projection)) / rate;
}

Eigen::VectorXd bumped(const WeightedGraph& g, Index e, double delta) {
  Eigen::VectorXd w = g.weights();
  w(static_cast<Eigen::Index>(e)) += delta;
  return w;
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

}  // namespace

const ReproRun& ReproResult::run(const std::string& name) const {
  for (const ReproRun& r : runs)
    if (r.name == name) return r;
  throw std::out_of_range("no run named " + name);
}

ReproResult run_repro(const ReproConfig& cfg) {
  if (!(cfg.beyond_factor > 1.0)) throw InputError("beyond_factor must exceed 1");
  if (!(cfg.stable_fraction > 0.0 && cfg.stable_fraction < 1.0))
    throw InputError("stable_fraction must lie in (0, 1)");
  if (cfg.target_rows == 0) throw InputError("target_rows must be positive");

  ReproResult r{cfg, generate_rgg(cfg.n, cfg.radius, cfg.seed, cfg.side), 0, 0, 0.0, 0.0, false,
                0.0, {}, {}, false, false, {}};
  const WeightedGraph& g = r.graph;
  const Index n = g.node_count();

  const MarginReport worst = worst_single_edge(g);
  r.binding_edge = *worst.binding_edge;
  r.margin = worst.global_margin;
  const Edge& be = g.edge(r.binding_edge);
  r.binding_resistance = effective_resistance(g, be.tail, be.head);
  r.binding_is_bridge = connected_components(g.without_edge(r.binding_edge)).count > 1;

  const Eigen::MatrixXd Lp = pseudoinverse(laplacian(g));
  double best = -1.0;
  for (Index k = 0; k < g.edge_count(); ++k) {
    const auto u = static_cast<Eigen::Index>(g.edge(k).tail);
    const auto v = static_cast<Eigen::Index>(g.edge(k).head);
    const double res = Lp(u, u) + Lp(v, v) - 2.0 * Lp(u, v);
    if (res > best) {
      best = res;
      r.argmax_resistance_edge = k;
    }
  }

  // Couplings phi(y) = a y + sin(y) with sectors [a - 1, a + 1].
  r.unstable_coupling = {cfg.unstable_a, 1.0, 1.0};
  r.stable_coupling = {1.0 - cfg.stable_fraction * r.margin, 1.0, 1.0};
  r.stable_coupling_passes_sector =
      single_edge_sector_check(g, r.binding_edge, r.stable_coupling.sector_alpha(),
                               r.stable_coupling.sector_beta());
  r.unstable_coupling_passes_sector =
      single_edge_sector_check(g, r.binding_edge, r.unstable_coupling.sector_alpha(),
                               r.unstable_coupling.sector_beta());

  SimulationConfig base;
  base.initial_state = RandomInitialState{cfg.x0_seed, 1.0};
  base.output_graph = {{be.tail, be.head}};
  const Eigen::VectorXd x0 = initial_state_for(base, n);

  const Eigen::MatrixXd L = laplacian(g);
  const Spectrum nominal = spectrum_of(L);
  const Eigen::VectorXd w_boundary = bumped(g, r.binding_edge, -r.margin);
  const Eigen::VectorXd w_beyond = bumped(g, r.binding_edge, -cfg.beyond_factor * r.margin);
  const Spectrum boundary = spectrum_of(laplacian(g, w_boundary));
  const Spectrum beyond = spectrum_of(laplacian(g, w_beyond));
  const NonlinearCoupling& us = r.unstable_coupling;
  const NonlinearCoupling& st = r.stable_coupling;
  const Spectrum unstable_lin =
      spectrum_of(laplacian(g, bumped(g, r.binding_edge, us.a + us.b * us.c)));
  const Spectrum stable_worst =
      spectrum_of(laplacian(g, bumped(g, r.binding_edge, st.sector_alpha())));

  const double rho = nominal.values.cwiseAbs().maxCoeff();
  const double guard = std::max({rho, boundary.values.cwiseAbs().maxCoeff(),
                                 beyond.values.cwiseAbs().maxCoeff(),
                                 rho + 2.0 * us.max_slope(), rho + 2.0 * st.max_slope()});
  r.dt = kStepFraction / guard;

  const double settle_nominal = kSettleFactor / slowest_decay(nominal.values);
  const double t_unstable = growth_time(unstable_lin, x0);
  const struct {
    const char* name;
    double duration;
  } plan[] = {
      {"nominal", settle_nominal},
      {"boundary", kSettleFactor / slowest_decay(boundary.values)},
      {"beyond", std::max(growth_time(beyond, x0), settle_nominal)},
      {"nonlinear_stable", kSettleFactor / slowest_decay(stable_worst.values)},
      {"nonlinear_unstable", t_unstable > 0.0 ? 2.0 * t_unstable : settle_nominal},
  };

  for (const auto& p : plan) {
    SimulationConfig sc = base;
    sc.duration = std::max(p.duration, r.dt);
    sc.dt = r.dt;
    const auto steps = static_cast<std::size_t>(std::ceil(sc.duration / sc.dt - 1e-9));
    sc.record_stride = std::max<std::size_t>(1, steps / cfg.target_rows);

    ReproRun run{p.name, sc.duration, steps, {}, {}};
    const std::string name = p.name;
    if (name == "nominal") {
      run.trajectory = simulate_linear(g, std::nullopt, sc);
    } else if (name == "boundary") {
      run.trajectory = simulate_linear(g, Eigen::VectorXd(w_boundary - g.weights()), sc);
    } else if (name == "beyond") {
      run.trajectory = simulate_linear(g, Eigen::VectorXd(w_beyond - g.weights()), sc);
    } else if (name == "nonlinear_stable") {
      run.trajectory = simulate_nonlinear(g, {r.binding_edge}, {st}, sc);
    } else {
      run.trajectory = simulate_nonlinear(g, {r.binding_edge}, {us}, sc);
    }
    run.summary = summarize_run(run.trajectory);
    r.runs.push_back(std::move(run));
  }
  return r;
}

std::string repro_summary_text(const ReproResult& r) {
  std::ostringstream os;
  const Edge& be = r.graph.edge(r.binding_edge);
  os << "graph: n=" << r.graph.node_count() << " m=" << r.graph.edge_count()
     << " radius=" << format_number(r.config.radius) << " side=" << format_number(r.config.side)
     << " seed=" << r.config.seed << '\n';
  os << "binding edge: " << r.binding_edge << " (" << be.tail << "," << be.head
     << ") w=" << format_number(be.weight) << " R=" << format_number(r.binding_resistance)
     << (r.binding_is_bridge ? " bridge" : "") << '\n';
  os << "argmax resistance edge: " << r.argmax_resistance_edge
     << (r.argmax_resistance_edge == r.binding_edge ? " (matches)" : " (MISMATCH)") << '\n';
  os << "margin: " << format_number(r.margin) << " (marginal at equality)\n";
  os << "dt: " << format_number(r.dt) << '\n';
  os << "stable coupling a=" << format_number(r.stable_coupling.a)
     << " sector check: " << (r.stable_coupling_passes_sector ? "pass" : "fail") << '\n';
  os << "unstable coupling a=" << format_number(r.unstable_coupling.a)
     << " sector check: " << (r.unstable_coupling_passes_sector ? "pass" : "fail") << '\n';
  for (const ReproRun& run : r.runs) {
    os << run.name << ": " << to_string(run.summary.outcome);
    if (run.summary.outcome == RunOutcome::diverged)
      os << " at t=" << format_number(*run.summary.divergence_time);
    else
      os << ", " << run.summary.cluster_count << " cluster(s)";
    os << " (T=" << format_number(run.duration) << ", steps=" << run.steps << ")\n";
  }
  return os.str();
}

std::string repro_report_json(const ReproResult& r) {
  using nlohmann::json;
  const Edge& be = r.graph.edge(r.binding_edge);
  json runs = json::array();
  for (const ReproRun& run : r.runs) {
    json j;
    j["name"] = run.name;
    j["outcome"] = std::string(to_string(run.summary.outcome));
    j["clusters"] = run.summary.cluster_count;
    j["duration"] = number(run.duration);
    j["steps"] = run.steps;
    j["final_output_norm"] = number(run.summary.final_output_norm);
    j["divergence_time"] =
        run.summary.divergence_time ? number(*run.summary.divergence_time) : json(nullptr);
    runs.push_back(std::move(j));
  }
  auto coupling = [](const NonlinearCoupling& c, bool passes) {
    return json{{"a", number(c.a)},
                {"b", number(c.b)},
                {"c", number(c.c)},
                {"sector", {number(c.sector_alpha()), number(c.sector_beta())}},
                {"sector_check", passes}};
  };
  json report{
      {"schema_version", 1},
      {"config",
       {{"n", r.config.n},
        {"radius", number(r.config.radius)},
        {"side", number(r.config.side)},
        {"seed", r.config.seed},
        {"x0_seed", r.config.x0_seed},
        {"beyond_factor", number(r.config.beyond_factor)}}},
      {"graph", {{"nodes", r.graph.node_count()}, {"edges", r.graph.edge_count()}}},
      {"binding_edge",
       {{"index", r.binding_edge},
        {"tail", be.tail},
        {"head", be.head},
        {"weight", number(be.weight)},
        {"resistance", number(r.binding_resistance)},
        {"bridge", r.binding_is_bridge}}},
      {"argmax_resistance_edge", r.argmax_resistance_edge},
      {"margin", number(r.margin)},
      {"dt", number(r.dt)},
      {"couplings",
       {{"stable", coupling(r.stable_coupling, r.stable_coupling_passes_sector)},
        {"unstable", coupling(r.unstable_coupling, r.unstable_coupling_passes_sector)}}},
      {"runs", runs},
  };
  return report.dump(2) + "\n";
}

void write_repro_artifacts(const ReproResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
  };
  write_graph_file(dir / "graph.json", r.graph);
  open("report.json") << repro_report_json(r);
  open("summary.txt") << repro_summary_text(r);
  for (const ReproRun& run : r.runs) {
    std::ofstream os = open(run.name + ".csv");
    write_trajectory_csv(os, run.trajectory);
  }
}

}  // namespace resistnet
