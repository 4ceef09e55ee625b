#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"

namespace resistnet {

/// v(t) = 0.
struct ZeroInput {};

/// v(t) = amplitude on [start, stop), zero elsewhere.
struct BurstInput {
  Eigen::VectorXd amplitude;
  double start = 0.0;
  double stop = 0.0;
};

/// Piecewise-linear interpolation of node-signal samples; held constant
/// outside the sampled range.
struct TableInput {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
};

using InputSignal = std::variant<ZeroInput, BurstInput, TableInput>;

/// Uniform draws in [-amplitude, amplitude] from the seeded splitmix stream.
struct RandomInitialState {
  std::uint64_t seed = 1;
  double amplitude = 1.0;
};

using InitialState = std::variant<Eigen::VectorXd, RandomInitialState>;

struct SimulationConfig {
  double duration = 20.0;
  double dt = 0.01;
  InitialState initial_state = RandomInitialState{};
  InputSignal input = ZeroInput{};
  std::vector<std::pair<Index, Index>> output_graph;  // z = E(G_o)^T x
  std::size_t record_stride = 1;                       // keep every k-th step (plus the last)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> outputs;  // empty vectors when no output graph
  bool diverged = false;
  std::optional<double> divergence_time;
};

/// phi(y) = a*y + b*sin(c*y); lies in the sector [a - |b c|, a + |b c|].
struct NonlinearCoupling {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;

  [[nodiscard]] double operator()(double y) const;
  [[nodiscard]] double sector_alpha() const;
  [[nodiscard]] double sector_beta() const;
  [[nodiscard]] double max_slope() const;
};

/// ||x|| above this multiple of (1 + ||x(0)||) ends a run as diverged.
inline constexpr double kDivergenceFactor = 1e9;
inline constexpr double kClusterTol = 1e-4;

/// Fixed-step classical RK4 on x' = -L(w + delta) x + v. Throws StepSizeError
/// when dt >= 2 / rho(L) and InputError on invalid configurations.
Trajectory simulate_linear(const WeightedGraph& g, const std::optional<Eigen::VectorXd>& delta,
                           const SimulationConfig& cfg);

/// x' = -L x - E_D Phi(E_D^T x) + v with Phi applied per uncertain edge.
Trajectory simulate_nonlinear(const WeightedGraph& g, const IndexList& uncertain_edges,
                              const std::vector<NonlinearCoupling>& couplings,
                              const SimulationConfig& cfg);

/// Nodes grouped by value: sorted values whose consecutive gaps are <= tol
/// share a group. Groups are ordered by their smallest member.
std::vector<IndexList> detect_clusters(const Eigen::VectorXd& state, double tol = kClusterTol);

enum class RunOutcome { converged, clustered, diverged };

std::string_view to_string(RunOutcome o) noexcept;

struct RunSummary {
  RunOutcome outcome = RunOutcome::converged;
  std::size_t cluster_count = 0;  // 0 when diverged
  std::optional<double> divergence_time;
  double final_output_norm = 0.0;  // ||z(T)||
};

/// Diverged runs are reported as such; otherwise the final state is split
/// with detect_clusters and a single group counts as converged.
RunSummary summarize_run(const Trajectory& traj, double cluster_tol = kClusterTol);

/// Resolves the initial state of cfg for an n-node graph.
Eigen::VectorXd initial_state_for(const SimulationConfig& cfg, Index node_count);

/// Largest |eigenvalue| of a symmetric matrix.
double spectral_radius(const Eigen::MatrixXd& symmetric);

/// CSV with header t,x0..x{n-1}[,z0..z{m-1}], 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace resistnet
