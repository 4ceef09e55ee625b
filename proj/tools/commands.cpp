#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "resistnet/errors.hpp"
#include "resistnet/experiment.hpp"
#include "resistnet/format.hpp"
#include "resistnet/graph_io.hpp"
#include "resistnet/robustness.hpp"
#include "resistnet/simulation.hpp"
#include "resistnet/stability.hpp"

namespace resistnet::cli {
namespace {

using nlohmann::json;

constexpr double kDefaultDt = 0.01;

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw InputError(what + ": expected a finite number, got '" + text + "'");
  return v;
}

Index parse_index(const std::string& text, const std::string& what) {
  Index v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InputError(what + ": expected a nonnegative integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& p : split(text, ',')) out.push_back(parse_double(p, what));
  return out;
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

json bounds_json(const SandwichBounds& b) {
  return {{"inv_max_weight", number(b.inv_max_weight)},
          {"max_edge_resistance", number(b.max_edge_resistance)},
          {"sigma_bar_m11", number(b.sigma_bar_m11)},
          {"r_total", number(b.r_total)}};
}

std::string bounds_text(const SandwichBounds& b) {
  return "1/max w = " + format_number(b.inv_max_weight) +
         ", max R_e = " + format_number(b.max_edge_resistance) +
         ", sigma_bar(M11) = " + format_number(b.sigma_bar_m11) +
         ", R_tot = " + format_number(b.r_total);
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string graph;
  double tol = kDefaultTol;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const WeightedGraph g = read_graph_file(a.graph);
  const AnalysisReport r = build_analysis_report(g, a.tol);
  out << (a.json ? to_json(r) : to_text(r));
  return r.verdict == to_string(StabilityClass::unstable) ? kExitNegative : kExitOk;
}

// ---- margin ----------------------------------------------------------------

struct MarginArgs {
  std::string graph;
  std::string edges = "all";
  std::string sector;
  double tol = kDefaultTol;
  bool json = false;
};

struct MarginChoice {
  UncertaintySpec spec;
  MarginReport report;
  std::string warning;  // set when set mode fell back to small_gain
};

MarginChoice resolve_margin(const WeightedGraph& g, const std::string& edges) {
  if (edges == "all") {
    UncertaintySpec spec = UncertaintySpec::all_edges(g);
    return {spec, small_gain_margin(g, spec), {}};
  }
  if (edges.rfind("single:", 0) == 0) {
    const Index e = parse_index(edges.substr(7), "--edges single");
    return {UncertaintySpec::single(e), single_edge_margin(g, e), {}};
  }
  if (edges.rfind("set:", 0) != 0)
    throw InputError("--edges must be all, single:<k> or set:<k1,k2,...>");

  UncertaintySpec spec;
  for (const std::string& p : split(edges.substr(4), ','))
    spec.uncertain_edges.push_back(parse_index(p, "--edges set"));
  if (spec.uncertain_edges.empty()) throw InputError("--edges set needs at least one edge");
  std::string warning;
  try {
    return {spec, disjoint_paths_margin(g, spec), {}};
  } catch (const NotApplicableError& e) {
    warning = e.what();
  } catch (const InputError& e) {
    // path enumeration refused (edge cap); invalid edges resurface in small_gain_margin
    warning = e.what();
  }
  return {spec, small_gain_margin(g, spec), warning};
}

int cmd_margin(const MarginArgs& a, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = read_graph_file(a.graph);
  try {
    require_nominal_stability(g, a.tol);
  } catch (const PreconditionError& e) {
    err << "margin: graph is not nominally stable: " << e.what() << '\n';
    return kExitNegative;
  }

  const auto [spec, report, warning] = resolve_margin(g, a.edges);
  const SandwichBounds bounds = sandwich_bounds(g, spec);

  std::optional<SectorVerdict> sector;
  if (!a.sector.empty()) {
    const std::vector<double> ab = parse_numbers(a.sector, "--sector");
    if (ab.size() != 2) throw InputError("--sector expects alpha,beta");
    const SectorSpec sectors(spec.uncertain_edges.size(), Sector{ab[0], ab[1]});
    sector = sector_stability_check(g, spec, sectors, a.tol);
  }

  if (a.json) {
    json per_edge = json::array();
    for (const EdgeMargin& e : report.per_edge)
      per_edge.push_back({{"edge", e.edge}, {"margin", number(e.margin)}});
    json binding = nullptr;
    if (report.binding_edge) binding = static_cast<std::uint64_t>(report.binding_edge.value());
    json j{{"schema_version", kReportSchemaVersion},
           {"method", std::string(to_string(report.method))},
           {"global_margin", number(report.global_margin)},
           {"binding_edge", binding},
           {"uncertain_edges", spec.uncertain_edges},
           {"per_edge", per_edge},
           {"sandwich_bounds", bounds_json(bounds)},
           {"warning", warning.empty() ? json(nullptr) : json(warning)},
           {"sector", nullptr}};
    if (sector)
      j["sector"] = {{"stable", sector->stable},
                     {"gain_condition", sector->gain_condition},
                     {"gain_slack", number(sector->gain_slack)},
                     {"quadratic_condition", sector->quadratic_condition},
                     {"quadratic_min", number(sector->quadratic_min)},
                     {"proof_form_min", number(sector->proof_form_min)},
                     {"forms_disagree", sector->forms_disagree},
                     {"note", sector->note}};
    out << j.dump(2) << '\n';
  } else {
    if (!warning.empty()) out << "warning: " << warning << "; falling back to small_gain\n";
    out << "method: " << to_string(report.method) << '\n';
    out << "global margin: " << format_number(report.global_margin)
        << " (stable for ||Delta|| below it; marginal at equality)\n";
    if (report.binding_edge) out << "binding edge: " << *report.binding_edge << '\n';
    out << "bounds: " << bounds_text(bounds) << '\n';
    if (sector) {
      out << "sector [" << a.sector << "]: " << (sector->stable ? "stable" : "not certified") << '\n';
      out << "  gain condition: " << (sector->gain_condition ? "holds" : "fails")
          << " (slack " << format_number(sector->gain_slack) << ")\n";
      out << "  quadratic condition: " << (sector->quadratic_condition ? "holds" : "fails")
          << " (min eigenvalue " << format_number(sector->quadratic_min) << ")\n";
      if (!sector->note.empty()) out << "  note: " << sector->note << '\n';
    }
  }
  return sector && !sector->stable ? kExitNegative : kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string graph;
  std::vector<std::string> perturb;
  std::vector<std::string> nonlinear;
  double duration = 20.0;
  std::string dt = "auto";
  std::string x0 = "random:1";
  std::string out_path;
  double tol = kDefaultTol;
  bool json = false;
};

std::pair<Index, std::string> split_assignment(const std::string& text, const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InputError(flag + " expects k=value, got '" + text + "'");
  return {parse_index(text.substr(0, eq), flag), text.substr(eq + 1)};
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const WeightedGraph g = read_graph_file(a.graph);
  if (!a.perturb.empty() && !a.nonlinear.empty())
    throw InputError("--perturb and --nonlinear cannot be combined");

  SimulationConfig cfg;
  cfg.duration = a.duration;
  for (const Edge& e : g.edges()) cfg.output_graph.emplace_back(e.tail, e.head);

  if (a.x0.rfind("random:", 0) == 0) {
    const std::string seed = a.x0.substr(7);
    cfg.initial_state = RandomInitialState{parse_index(seed, "--x0 random"), 1.0};
  } else {
    const std::vector<double> xs = parse_numbers(a.x0, "--x0");
    cfg.initial_state = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
        xs.data(), static_cast<Eigen::Index>(xs.size())));
  }

  std::optional<Eigen::VectorXd> delta;
  IndexList uncertain;
  std::vector<NonlinearCoupling> couplings;
  double guard = 0.0;
  if (!a.nonlinear.empty()) {
    double slope = 0.0;
    for (const std::string& item : a.nonlinear) {
      auto [k, rest] = split_assignment(item, "--nonlinear");
      const std::vector<double> abc = parse_numbers(rest, "--nonlinear");
      if (abc.size() != 3) throw InputError("--nonlinear expects k=a,b,c");
      uncertain.push_back(k);
      couplings.push_back({abc[0], abc[1], abc[2]});
      slope = std::max(slope, couplings.back().max_slope());
    }
    guard = spectral_radius(laplacian(g)) + 2.0 * slope;
  } else {
    if (!a.perturb.empty()) {
      delta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.edge_count()));
      for (const std::string& item : a.perturb) {
        auto [k, rest] = split_assignment(item, "--perturb");
        if (k >= g.edge_count()) throw InputError("--perturb edge " + std::to_string(k) + " out of range");
        (*delta)(static_cast<Eigen::Index>(k)) += parse_double(rest, "--perturb");
      }
    }
    guard = spectral_radius(laplacian(g, delta ? Eigen::VectorXd(g.weights() + *delta) : g.weights()));
  }
  cfg.dt = a.dt == "auto" ? (guard > 0.0 ? std::min(kDefaultDt, 1.0 / guard) : kDefaultDt)
                          : parse_double(a.dt, "--dt");

  const Trajectory traj = couplings.empty() ? simulate_linear(g, delta, cfg)
                                            : simulate_nonlinear(g, uncertain, couplings, cfg);
  const RunSummary s = summarize_run(traj);

  if (!a.out_path.empty()) {
    std::ofstream os(a.out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + a.out_path);
    write_trajectory_csv(os, traj);
  }

  if (a.json) {
    json j{{"schema_version", kReportSchemaVersion},
           {"outcome", std::string(to_string(s.outcome))},
           {"clusters", s.cluster_count},
           {"divergence_time", s.divergence_time ? number(*s.divergence_time) : json(nullptr)},
           {"final_output_norm", number(s.final_output_norm)},
           {"dt", number(cfg.dt)},
           {"duration", number(cfg.duration)},
           {"rows", traj.times.size()}};
    out << j.dump(2) << '\n';
  } else {
    out << to_string(s.outcome);
    if (s.outcome == RunOutcome::diverged)
      out << " at t=" << format_number(*s.divergence_time);
    else
      out << ", " << s.cluster_count << (s.cluster_count == 1 ? " cluster" : " clusters")
          << ", |z(T)| = " << format_number(s.final_output_norm);
    out << " (dt=" << format_number(cfg.dt) << ", T=" << format_number(cfg.duration) << ")\n";
  }
  return s.outcome == RunOutcome::diverged ? kExitNegative : kExitOk;
}

// ---- repro-sec6 ------------------------------------------------------------

struct ReproArgs {
  ReproConfig cfg;
  std::string out_dir = "repro-sec6";
  double tol = kDefaultTol;
  bool json = false;
};

int cmd_repro(const ReproArgs& a, std::ostream& out) {
  const ReproResult r = run_repro(a.cfg);
  write_repro_artifacts(r, a.out_dir);
  out << (a.json ? repro_report_json(r) : repro_summary_text(r));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability and robustness analysis of weighted consensus networks", "resistnet"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  CLI::App* an = app.add_subcommand("analyze", "Signature, stability verdict and margins of a graph");
  an->add_option("graph", analyze.graph, "Graph JSON file")->required();
  an->add_option("--tol", analyze.tol, "Relative zero-eigenvalue tolerance");
  an->add_flag("--json", analyze.json, "Machine-readable output");

  MarginArgs margin;
  CLI::App* mg = app.add_subcommand("margin", "Robustness margin for uncertain edge weights");
  mg->add_option("graph", margin.graph, "Graph JSON file")->required();
  mg->add_option("--edges", margin.edges, "all | single:<k> | set:<k1,k2,...>");
  mg->add_option("--sector", margin.sector, "Sector alpha,beta applied to every uncertain edge");
  mg->add_option("--tol", margin.tol, "Relative zero-eigenvalue tolerance");
  mg->add_flag("--json", margin.json, "Machine-readable output");

  SimulateArgs sim;
  CLI::App* sm = app.add_subcommand("simulate", "Integrate the consensus dynamics");
  sm->add_option("graph", sim.graph, "Graph JSON file")->required();
  sm->add_option("--perturb", sim.perturb, "Weight perturbation k=delta (repeatable)");
  sm->add_option("--nonlinear", sim.nonlinear, "Coupling a*y + b*sin(c*y) on edge k: k=a,b,c (repeatable)");
  sm->add_option("--T", sim.duration, "Duration");
  sm->add_option("--dt", sim.dt, "Step size or 'auto'");
  sm->add_option("--x0", sim.x0, "Initial state: comma list or random:<seed>");
  sm->add_option("--out", sim.out_path, "Trajectory CSV path");
  sm->add_option("--tol", sim.tol, "Accepted for uniformity; unused");
  sm->add_flag("--json", sim.json, "Machine-readable output");

  ReproArgs repro;
  CLI::App* rp = app.add_subcommand("repro-sec6", "Random geometric graph margin experiment");
  rp->add_option("--n", repro.cfg.n, "Node count");
  rp->add_option("--radius", repro.cfg.radius, "Connection radius");
  rp->add_option("--seed", repro.cfg.seed, "Generator seed");
  rp->add_option("--side", repro.cfg.side, "Side length of the square domain");
  rp->add_option("--out", repro.out_dir, "Artifact directory");
  rp->add_option("--tol", repro.tol, "Accepted for uniformity; unused");
  rp->add_flag("--json", repro.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  for (double tol : {analyze.tol, margin.tol, sim.tol, repro.tol}) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      err << "error: --tol must be a positive number\n";
      return kExitError;
    }
  }

  try {
    if (an->parsed()) return cmd_analyze(analyze, out);
    if (mg->parsed()) return cmd_margin(margin, out, err);
    if (sm->parsed()) return cmd_simulate(sim, out);
    return cmd_repro(repro, out);
  } catch (const NotApplicableError& e) {
    err << "not applicable: " << e.what() << '\n';
    return kExitNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace resistnet::cli
