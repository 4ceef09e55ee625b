#include "resistnet/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cut_space.hpp"
#include "resistnet/errors.hpp"
#include "resistnet/resistance.hpp"
#include "resistnet/stability.hpp"

namespace resistnet {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void validate_spec(const WeightedGraph& g, const UncertaintySpec& spec) {
  IndexList sorted = spec.uncertain_edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("uncertain edge listed twice");
  for (Index k : sorted)
    if (k >= g.edge_count())
      throw InputError("uncertain edge " + std::to_string(k) + " out of range");
  if (!(spec.bound >= 0.0)) throw InputError("uncertainty bound must be nonnegative");
}

bool uniform_positive_weights(const WeightedGraph& g) {
  if (g.edge_count() == 0) return false;
  const double w0 = g.edge(0).weight;
  return w0 > 0.0 && std::all_of(g.edges().begin(), g.edges().end(),
                                 [w0](const Edge& e) { return e.weight == w0; });
}

bool covers_all_edges(const WeightedGraph& g, const UncertaintySpec& spec) {
  if (spec.uncertain_edges.size() != g.edge_count()) return false;
  IndexList sorted = spec.uncertain_edges;
  std::sort(sorted.begin(), sorted.end());
  for (Index k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) return false;
  return true;
}

std::vector<EdgeMargin> margins_from_diagonal(const UncertaintySpec& spec,
                                              const Eigen::MatrixXd& m11) {
  std::vector<EdgeMargin> out;
  out.reserve(spec.uncertain_edges.size());
  for (Index i = 0; i < spec.uncertain_edges.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out.push_back({spec.uncertain_edges[i], 1.0 / m11(ii, ii)});
  }
  return out;
}

SandwichBounds bounds_from(const WeightedGraph& g, const UncertaintySpec& spec,
                           const Eigen::MatrixXd& m11) {
  SandwichBounds b;
  if (spec.uncertain_edges.empty()) return b;
  double max_weight = -kInfinity;
  for (Index k : spec.uncertain_edges) max_weight = std::max(max_weight, g.edge(k).weight);
  b.inv_max_weight = 1.0 / max_weight;
  b.max_edge_resistance = m11.diagonal().maxCoeff();
  b.sigma_bar_m11 = spectral_norm(m11);
  b.r_total = m11.trace();

  const double slack = 1e-9 * std::max(1.0, b.r_total);
  if (b.max_edge_resistance > b.sigma_bar_m11 + slack || b.sigma_bar_m11 > b.r_total + slack) {
    std::ostringstream os;
    os << "sandwich bounds violated: max R_e " << b.max_edge_resistance << ", sigma_bar "
       << b.sigma_bar_m11 << ", R_tot " << b.r_total;
    throw std::logic_error(os.str());
  }
  return b;
}

Index argmin_margin(const std::vector<EdgeMargin>& margins) {
  Index best = 0;
  for (Index i = 1; i < margins.size(); ++i) {
    const bool smaller = margins[i].margin < margins[best].margin;
    const bool tie_lower = margins[i].margin == margins[best].margin &&
                           margins[i].edge < margins[best].edge;
    if (smaller || tie_lower) best = i;
  }
  return best;
}

}  // namespace

UncertaintySpec UncertaintySpec::all_edges(const WeightedGraph& g, double bound) {
  UncertaintySpec s;
  s.uncertain_edges.resize(g.edge_count());
  std::iota(s.uncertain_edges.begin(), s.uncertain_edges.end(), Index{0});
  s.bound = bound;
  return s;
}

UncertaintySpec UncertaintySpec::single(Index edge, double bound) { return {{edge}, bound}; }

Eigen::MatrixXd selection_matrix(const WeightedGraph& g, const UncertaintySpec& spec) {
  validate_spec(g, spec);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edge_count()),
                                            static_cast<Eigen::Index>(spec.uncertain_edges.size()));
  for (Index j = 0; j < spec.uncertain_edges.size(); ++j)
    P(static_cast<Eigen::Index>(spec.uncertain_edges[j]), static_cast<Eigen::Index>(j)) = 1.0;
  return P;
}

std::string_view to_string(MarginMethod m) noexcept {
  switch (m) {
    case MarginMethod::exact_single_edge: return "exact_single_edge";
    case MarginMethod::small_gain: return "small_gain";
    case MarginMethod::uniform_weight: return "uniform_weight";
    case MarginMethod::disjoint_paths: return "disjoint_paths";
  }
  return "unknown";
}

void require_nominal_stability(const WeightedGraph& g, double tol) {
  const StabilityVerdict v = classify_stability(g, tol);
  if (v.component_count != 1 || v.classification != StabilityClass::stable_agreement) {
    std::ostringstream os;
    os << "network is not nominally stable: signature " << v.signature << ", "
       << v.component_count << " component(s), verdict " << to_string(v.classification);
    throw PreconditionError(os.str());
  }
}

Eigen::MatrixXd m11_at_zero(const WeightedGraph& g, const UncertaintySpec& spec) {
  require_nominal_stability(g);
  const ForestDecomposition f = spanning_forest(g);
  const detail::CutSpaceInverse inv(f, g.weights());
  const Eigen::MatrixXd RP = f.cut_set * selection_matrix(g, spec);
  Eigen::MatrixXd M = RP.transpose() * inv.solve(RP);
  return 0.5 * (M + M.transpose());
}

Eigen::MatrixXcd m11_frequency_response(const WeightedGraph& g, const UncertaintySpec& spec,
                                        double omega) {
  require_nominal_stability(g);
  if (!std::isfinite(omega)) throw InputError("frequency must be finite");
  const ForestDecomposition f = spanning_forest(g);
  const Eigen::MatrixXd RP = f.cut_set * selection_matrix(g, spec);
  const Eigen::MatrixXd LeF = forest_edge_laplacian(g, f);
  const Eigen::MatrixXd Less = LeF * cut_space_form(g, f);

  const Eigen::Index r = Less.rows();
  Eigen::MatrixXcd A = Less.cast<std::complex<double>>();
  A.diagonal().array() += std::complex<double>(0.0, omega);
  const Eigen::MatrixXcd rhs = (LeF * RP).cast<std::complex<double>>();
  if (r == 0) return Eigen::MatrixXcd::Zero(RP.cols(), RP.cols());
  const Eigen::MatrixXcd X = A.partialPivLu().solve(rhs);
  return RP.transpose().cast<std::complex<double>>() * X;
}

SandwichBounds sandwich_bounds(const WeightedGraph& g, const UncertaintySpec& spec) {
  return bounds_from(g, spec, m11_at_zero(g, spec));
}

MarginReport small_gain_margin(const WeightedGraph& g, const UncertaintySpec& spec) {
  const Eigen::MatrixXd m11 = m11_at_zero(g, spec);
  MarginReport r;
  r.bounds = bounds_from(g, spec, m11);
  r.per_edge = margins_from_diagonal(spec, m11);
  if (spec.uncertain_edges.empty()) {
    r.global_margin = kInfinity;
    return r;
  }
  r.global_margin = 1.0 / r.bounds.sigma_bar_m11;
  r.method = MarginMethod::small_gain;
  if (spec.uncertain_edges.size() == 1) {
    r.method = MarginMethod::exact_single_edge;
    r.binding_edge = spec.uncertain_edges.front();
  } else if (covers_all_edges(g, spec) && uniform_positive_weights(g)) {
    r.method = MarginMethod::uniform_weight;
    r.global_margin = g.edge(0).weight;
  }
  return r;
}

MarginReport single_edge_margin(const WeightedGraph& g, Index e) {
  if (e >= g.edge_count()) throw InputError("edge " + std::to_string(e) + " out of range");
  return small_gain_margin(g, UncertaintySpec::single(e));
}

MarginReport worst_single_edge(const WeightedGraph& g) {
  const UncertaintySpec spec = UncertaintySpec::all_edges(g);
  const Eigen::MatrixXd m11 = m11_at_zero(g, spec);
  MarginReport r;
  r.method = MarginMethod::exact_single_edge;
  r.bounds = bounds_from(g, spec, m11);
  r.per_edge = margins_from_diagonal(spec, m11);
  if (r.per_edge.empty()) {
    r.global_margin = kInfinity;
    return r;
  }
  const Index best = argmin_margin(r.per_edge);
  r.global_margin = r.per_edge[best].margin;
  r.binding_edge = r.per_edge[best].edge;
  return r;
}

MarginReport disjoint_paths_margin(const WeightedGraph& g, const UncertaintySpec& spec) {
  validate_spec(g, spec);
  require_nominal_stability(g);
  std::vector<IndexList> paths;
  for (Index k : spec.uncertain_edges)
    paths.push_back(path_edge_set(g, g.edge(k).tail, g.edge(k).head));
  for (Index i = 0; i < paths.size(); ++i) {
    for (Index j = i + 1; j < paths.size(); ++j) {
      IndexList shared;
      std::set_intersection(paths[i].begin(), paths[i].end(), paths[j].begin(), paths[j].end(),
                            std::back_inserter(shared));
      if (!shared.empty())
        throw NotApplicableError("path sets of uncertain edges " +
                                 std::to_string(spec.uncertain_edges[i]) + " and " +
                                 std::to_string(spec.uncertain_edges[j]) +
                                 " overlap");
    }
  }
  const Eigen::MatrixXd m11 = m11_at_zero(g, spec);
  MarginReport r;
  r.method = MarginMethod::disjoint_paths;
  r.bounds = bounds_from(g, spec, m11);
  r.per_edge = margins_from_diagonal(spec, m11);
  if (r.per_edge.empty()) {
    r.global_margin = kInfinity;
    return r;
  }
  const Index best = argmin_margin(r.per_edge);
  r.global_margin = r.per_edge[best].margin;
  r.binding_edge = r.per_edge[best].edge;
  return r;
}

SectorVerdict sector_stability_check(const WeightedGraph& g, const UncertaintySpec& spec,
                                     const SectorSpec& sectors, double tol) {
  validate_spec(g, spec);
  if (sectors.size() != spec.uncertain_edges.size())
    throw InputError("need exactly one sector per uncertain edge");
  for (const Sector& s : sectors) {
    if (!std::isfinite(s.alpha) || !std::isfinite(s.beta))
      throw InputError("sector bounds must be finite");
    if (!(s.alpha < s.beta)) throw InputError("sector requires alpha < beta");
  }

  const Eigen::MatrixXd m11 = m11_at_zero(g, spec);
  SectorVerdict v;
  double max_alpha = 0.0;
  for (const Sector& s : sectors) max_alpha = std::max(max_alpha, std::abs(s.alpha));
  const double norm = spectral_norm(m11);
  const double gain_limit = norm > 0.0 ? 1.0 / norm : kInfinity;
  v.gain_condition = max_alpha < gain_limit;
  v.gain_slack = gain_limit - max_alpha;

  // Both quadratic forms are diagonal in the edge basis.
  Eigen::VectorXd statement = 2.0 * g.weights();
  Eigen::VectorXd proof = statement;
  for (Index i = 0; i < sectors.size(); ++i) {
    const double k = sectors[i].beta - sectors[i].alpha;
    const auto e = static_cast<Eigen::Index>(spec.uncertain_edges[i]);
    statement(e) += k * k - 2.0 * k - 1.0;
    proof(e) += -k * k + 2.0 * k - 1.0;
  }
  v.quadratic_min = statement.size() > 0 ? statement.minCoeff() : kInfinity;
  v.proof_form_min = proof.size() > 0 ? proof.minCoeff() : kInfinity;
  v.quadratic_condition = v.quadratic_min > tol;
  v.forms_disagree = v.quadratic_condition != (v.proof_form_min > tol);
  if (v.forms_disagree) {
    std::ostringstream os;
    os << "quadratic condition uses 2W + P(K^2 - 2K - I)P^T (min " << v.quadratic_min
       << "); the alternative form 2W + P(-K^2 + 2K - I)P^T (min " << v.proof_form_min
       << ") gives the opposite verdict";
    v.note = os.str();
  }
  v.stable = v.gain_condition && v.quadratic_condition;
  return v;
}

bool single_edge_sector_check(const WeightedGraph& g, Index e, double alpha, double beta) {
  if (e >= g.edge_count()) throw InputError("edge " + std::to_string(e) + " out of range");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta))
    throw InputError("sector requires finite alpha < beta");
  require_nominal_stability(g);
  const Edge& edge = g.edge(e);
  const double resistance = effective_resistance(g, edge.tail, edge.head);
  const double width = beta - alpha;
  return std::abs(alpha) < 1.0 / resistance &&
         width * width - 2.0 * width - 1.0 > -2.0 * edge.weight;
}

}  // namespace resistnet
