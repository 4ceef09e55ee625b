#include "resistnet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>

#include "resistnet/errors.hpp"
#include "resistnet/rgg.hpp"
#include "resistnet/spectral.hpp"

namespace resistnet {
namespace {

struct WeightedLink {
  Eigen::Index tail;
  Eigen::Index head;
  double weight;
};

struct CouplingLink {
  Eigen::Index tail;
  Eigen::Index head;
  NonlinearCoupling phi;
};

// Right-hand side -L x - E_D Phi(E_D^T x), evaluated edge by edge.
class NetworkField {
 public:
  NetworkField(std::vector<WeightedLink> links, std::vector<CouplingLink> couplings)
      : links_(std::move(links)), couplings_(std::move(couplings)) {}

  void evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    out.setZero();
    for (const WeightedLink& l : links_) {
      const double flow = l.weight * (x(l.tail) - x(l.head));
      out(l.tail) -= flow;
      out(l.head) += flow;
    }
    for (const CouplingLink& c : couplings_) {
      const double flow = c.phi(x(c.tail) - x(c.head));
      out(c.tail) -= flow;
      out(c.head) += flow;
    }
  }

 private:
  std::vector<WeightedLink> links_;
  std::vector<CouplingLink> couplings_;
};

class InputEvaluator {
 public:
  InputEvaluator(const InputSignal& signal, Index n) : signal_(signal), n_(n) {
    if (const auto* burst = std::get_if<BurstInput>(&signal_)) {
      if (static_cast<Index>(burst->amplitude.size()) != n)
        throw InputError("burst amplitude length must equal node count");
      if (!burst->amplitude.allFinite() || !(burst->start <= burst->stop))
        throw InputError("burst input requires finite amplitude and start <= stop");
    } else if (const auto* table = std::get_if<TableInput>(&signal_)) {
      if (table->times.empty() || table->times.size() != table->values.size())
        throw InputError("input table needs matching, non-empty times and values");
      if (!std::is_sorted(table->times.begin(), table->times.end()))
        throw InputError("input table times must be non-decreasing");
      for (const auto& v : table->values)
        if (static_cast<Index>(v.size()) != n || !v.allFinite())
          throw InputError("input table rows must be finite with one value per node");
    }
  }

  [[nodiscard]] bool is_zero() const { return std::holds_alternative<ZeroInput>(signal_); }

  void add_to(double t, Eigen::VectorXd& out) const {
    if (const auto* burst = std::get_if<BurstInput>(&signal_)) {
      if (t >= burst->start && t < burst->stop) out += burst->amplitude;
    } else if (const auto* table = std::get_if<TableInput>(&signal_)) {
      const auto& ts = table->times;
      if (t <= ts.front()) {
        out += table->values.front();
      } else if (t >= ts.back()) {
        out += table->values.back();
      } else {
        const auto hi = static_cast<Index>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
        const Index lo = hi - 1;
        const double span = ts[hi] - ts[lo];
        const double s = span > 0.0 ? (t - ts[lo]) / span : 1.0;
        out += (1.0 - s) * table->values[lo] + s * table->values[hi];
      }
    }
    (void)n_;
  }

 private:
  const InputSignal& signal_;
  Index n_;
};

Eigen::VectorXd output_of(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& out_edges,
                          const Eigen::VectorXd& x) {
  Eigen::VectorXd z(static_cast<Eigen::Index>(out_edges.size()));
  for (Index k = 0; k < out_edges.size(); ++k)
    z(static_cast<Eigen::Index>(k)) = x(out_edges[k].first) - x(out_edges[k].second);
  return z;
}

Trajectory integrate(const NetworkField& field, const SimulationConfig& cfg, Index n,
                     double guard_radius) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw InputError("dt must be positive");
  if (!std::isfinite(cfg.duration) || !(cfg.duration >= cfg.dt))
    throw InputError("duration must be at least dt");
  if (cfg.record_stride == 0) throw InputError("record_stride must be positive");
  if (guard_radius > 0.0 && cfg.dt >= 2.0 / guard_radius) {
    std::ostringstream os;
    os.precision(12);
    os << "step size dt=" << cfg.dt << " violates the stability guard; need dt < "
       << 2.0 / guard_radius << " (2 / spectral radius " << guard_radius << ")";
    throw StepSizeError(os.str());
  }

  std::vector<std::pair<Eigen::Index, Eigen::Index>> out_edges;
  for (auto [u, v] : cfg.output_graph) {
    if (u >= n || v >= n || u == v) throw InputError("output graph edge outside the node set");
    out_edges.emplace_back(static_cast<Eigen::Index>(std::min(u, v)),
                           static_cast<Eigen::Index>(std::max(u, v)));
  }

  const InputEvaluator input(cfg.input, n);
  Eigen::VectorXd x = initial_state_for(cfg, n);
  const double limit = kDivergenceFactor * (1.0 + x.norm());

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.duration / cfg.dt - 1e-9));
  Trajectory traj;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.outputs.push_back(output_of(out_edges, x));
  };
  record(0.0);

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto rhs = [&](double t, const Eigen::VectorXd& state, Eigen::VectorXd& out) {
    field.evaluate(state, out);
    if (!input.is_zero()) input.add_to(t, out);
  };

  double t = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_next = s == steps ? cfg.duration : static_cast<double>(s) * cfg.dt;
    const double h = t_next - t;
    rhs(t, x, k1);
    tmp = x + 0.5 * h * k1;
    rhs(t + 0.5 * h, tmp, k2);
    tmp = x + 0.5 * h * k2;
    rhs(t + 0.5 * h, tmp, k3);
    tmp = x + h * k3;
    rhs(t + h, tmp, k4);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t_next;

    const double norm = x.norm();
    if (!std::isfinite(norm) || norm > limit) {
      traj.diverged = true;
      traj.divergence_time = t;
      record(t);
      break;
    }
    if (s % cfg.record_stride == 0 || s == steps) record(t);
  }
  return traj;
}

std::vector<WeightedLink> links_of(const WeightedGraph& g, const Eigen::VectorXd& weights) {
  std::vector<WeightedLink> links;
  links.reserve(g.edge_count());
  for (Index k = 0; k < g.edge_count(); ++k) {
    const double w = weights(static_cast<Eigen::Index>(k));
    if (w != 0.0)
      links.push_back({static_cast<Eigen::Index>(g.edge(k).tail),
                       static_cast<Eigen::Index>(g.edge(k).head), w});
  }
  return links;
}

}  // namespace

double NonlinearCoupling::operator()(double y) const { return a * y + b * std::sin(c * y); }
double NonlinearCoupling::sector_alpha() const { return a - std::abs(b * c); }
double NonlinearCoupling::sector_beta() const { return a + std::abs(b * c); }
double NonlinearCoupling::max_slope() const { return std::abs(a) + std::abs(b * c); }

double spectral_radius(const Eigen::MatrixXd& symmetric) {
  const Eigen::VectorXd lambda = symmetric_eigenvalues(symmetric);
  return lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0;
}

Eigen::VectorXd initial_state_for(const SimulationConfig& cfg, Index node_count) {
  if (const auto* given = std::get_if<Eigen::VectorXd>(&cfg.initial_state)) {
    if (static_cast<Index>(given->size()) != node_count)
      throw InputError("initial state length must equal node count");
    if (!given->allFinite()) throw InputError("initial state must be finite");
    return *given;
  }
  const auto& spec = std::get<RandomInitialState>(cfg.initial_state);
  SplitMix64 rng(spec.seed);
  Eigen::VectorXd x(static_cast<Eigen::Index>(node_count));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = spec.amplitude * (2.0 * rng.uniform() - 1.0);
  return x;
}

Trajectory simulate_linear(const WeightedGraph& g, const std::optional<Eigen::VectorXd>& delta,
                           const SimulationConfig& cfg) {
  Eigen::VectorXd weights = g.weights();
  if (delta) {
    if (delta->size() != weights.size())
      throw InputError("perturbation length must equal edge count");
    if (!delta->allFinite()) throw InputError("perturbation entries must be finite");
    weights += *delta;
  }
  const double radius = spectral_radius(laplacian(g, weights));
  const NetworkField field(links_of(g, weights), {});
  return integrate(field, cfg, g.node_count(), radius);
}

Trajectory simulate_nonlinear(const WeightedGraph& g, const IndexList& uncertain_edges,
                              const std::vector<NonlinearCoupling>& couplings,
                              const SimulationConfig& cfg) {
  if (uncertain_edges.size() != couplings.size())
    throw InputError("need exactly one coupling per uncertain edge");
  std::vector<CouplingLink> links;
  double max_slope = 0.0;
  for (Index i = 0; i < uncertain_edges.size(); ++i) {
    const Index k = uncertain_edges[i];
    if (k >= g.edge_count()) throw InputError("uncertain edge " + std::to_string(k) + " out of range");
    if (std::find(uncertain_edges.begin(), uncertain_edges.begin() + static_cast<std::ptrdiff_t>(i), k) !=
        uncertain_edges.begin() + static_cast<std::ptrdiff_t>(i))
      throw InputError("uncertain edge " + std::to_string(k) + " listed twice");
    const NonlinearCoupling& phi = couplings[i];
    if (!std::isfinite(phi.a) || !std::isfinite(phi.b) || !std::isfinite(phi.c) || phi.c == 0.0)
      throw InputError("coupling parameters must be finite with c != 0");
    links.push_back({static_cast<Eigen::Index>(g.edge(k).tail),
                     static_cast<Eigen::Index>(g.edge(k).head), phi});
    max_slope = std::max(max_slope, phi.max_slope());
  }
  const double radius = spectral_radius(laplacian(g)) + 2.0 * max_slope;
  const NetworkField field(links_of(g, g.weights()), std::move(links));
  return integrate(field, cfg, g.node_count(), radius);
}

std::vector<IndexList> detect_clusters(const Eigen::VectorXd& state, double tol) {
  const auto n = static_cast<Index>(state.size());
  IndexList order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return state(static_cast<Eigen::Index>(a)) < state(static_cast<Eigen::Index>(b));
  });

  std::vector<IndexList> groups;
  for (Index i = 0; i < n; ++i) {
    const double gap = i == 0 ? 0.0
                              : state(static_cast<Eigen::Index>(order[i])) -
                                    state(static_cast<Eigen::Index>(order[i - 1]));
    if (i == 0 || gap > tol) groups.emplace_back();
    groups.back().push_back(order[i]);
  }
  for (auto& group : groups) std::sort(group.begin(), group.end());
  std::sort(groups.begin(), groups.end(),
            [](const IndexList& a, const IndexList& b) { return a.front() < b.front(); });
  return groups;
}

std::string_view to_string(RunOutcome o) noexcept {
  switch (o) {
    case RunOutcome::converged: return "converged";
    case RunOutcome::clustered: return "clustered";
    case RunOutcome::diverged: return "diverged";
  }
  return "unknown";
}

RunSummary summarize_run(const Trajectory& traj, double cluster_tol) {
  RunSummary s;
  if (!traj.outputs.empty()) s.final_output_norm = traj.outputs.back().norm();
  if (traj.diverged) {
    s.outcome = RunOutcome::diverged;
    s.divergence_time = traj.divergence_time;
    return s;
  }
  if (traj.states.empty()) return s;
  s.cluster_count = detect_clusters(traj.states.back(), cluster_tol).size();
  s.outcome = s.cluster_count <= 1 ? RunOutcome::converged : RunOutcome::clustered;
  return s;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Index n = traj.states.empty() ? 0 : static_cast<Index>(traj.states.front().size());
  const Index m = traj.outputs.empty() ? 0 : static_cast<Index>(traj.outputs.front().size());
  os << "t";
  for (Index i = 0; i < n; ++i) os << ",x" << i;
  for (Index k = 0; k < m; ++k) os << ",z" << k;
  os << '\n';

  char buf[40];
  auto put = [&](double value) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << buf;
  };
  for (Index r = 0; r < traj.times.size(); ++r) {
    put(traj.times[r]);
    for (Eigen::Index i = 0; i < traj.states[r].size(); ++i) {
      os << ',';
      put(traj.states[r](i));
    }
    for (Eigen::Index k = 0; k < traj.outputs[r].size(); ++k) {
      os << ',';
      put(traj.outputs[r](k));
    }
    os << '\n';
  }
}

}  // namespace resistnet
