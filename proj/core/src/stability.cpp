#include "resistnet/stability.hpp"

#include <algorithm>
#include <cmath>

#include "resistnet/errors.hpp"
#include "resistnet/resistance.hpp"

namespace resistnet {
namespace {

WeightedGraph connected_positive_part(const WeightedGraph& g) {
  WeightedGraph plus = positive_subgraph(g);
  if (connected_components(plus).count != 1)
    throw PreconditionError("positive-weight subgraph is disconnected (negative edges form a cut)");
  return plus;
}

}  // namespace

std::string_view to_string(StabilityClass c) noexcept {
  switch (c) {
    case StabilityClass::stable_agreement: return "stable_agreement";
    case StabilityClass::marginal: return "marginal";
    case StabilityClass::unstable: return "unstable";
  }
  return "unknown";
}

std::string_view to_string(CutVerdict v) noexcept {
  return v == CutVerdict::indefinite_by_cut ? "indefinite_by_cut" : "inconclusive";
}

StabilityVerdict classify_stability(const WeightedGraph& g, double tol) {
  const ForestDecomposition f = spanning_forest(g);
  StabilityVerdict out;
  out.component_count = f.component_count;
  out.signature = signature_of(cut_space_form(g, f), tol) + Signature{0, 0, f.component_count};

  if (out.signature.n_minus > 0)
    out.classification = StabilityClass::unstable;
  else if (out.signature.n_zero > f.component_count)
    out.classification = StabilityClass::marginal;
  else
    out.classification = StabilityClass::stable_agreement;

  if (out.classification == StabilityClass::unstable) {
    const NegativeCut cut = negative_cut_components(g);
    if (cut.cut_exists) {
      out.witnesses = cut.cut_edges;
    } else {
      const WeightedGraph plus = positive_subgraph(g);
      for (Index k : signed_partition(g).negative_edges) {
        const Edge& e = g.edge(k);
        const double r = effective_resistance(plus, e.tail, e.head);
        if (std::abs(e.weight) * r > 1.0) out.witnesses.push_back(k);
      }
    }
  }
  return out;
}

bool lmi_psd_check(const WeightedGraph& g, double tol) {
  const SignedPartition part = signed_partition(g);
  if (part.negative_edges.empty()) return is_psd(laplacian(g), tol);

  const auto m = static_cast<Eigen::Index>(part.negative_edges.size());
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const Eigen::MatrixXd E = incidence_matrix(g);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m + n, m + n);
  Eigen::MatrixXd Eminus(n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Index k = part.negative_edges[static_cast<Index>(i)];
    Eminus.col(i) = E.col(static_cast<Eigen::Index>(k));
    block(i, i) = 1.0 / std::abs(g.edge(k).weight);
  }
  block.bottomLeftCorner(n, m) = Eminus;
  block.topRightCorner(m, n) = Eminus.transpose();
  block.bottomRightCorner(n, n) = laplacian(g.edge_subgraph(part.positive_edges));
  return is_psd(block, tol);
}

CutVerdict negative_cut_verdict(const WeightedGraph& g) {
  return negative_cut_components(g).cut_exists ? CutVerdict::indefinite_by_cut
                                               : CutVerdict::inconclusive;
}

double single_negative_edge_threshold(const WeightedGraph& g_plus, Index u, Index v) {
  for (const Edge& e : g_plus.edges())
    if (e.weight <= 0.0) throw PreconditionError("g_plus must have only positive weights");
  if (connected_components(g_plus).count != 1)
    throw PreconditionError("g_plus is disconnected; any negative weight across the cut is destabilizing");
  return 1.0 / effective_resistance(g_plus, u, v);
}

NegativeEdgeThresholds multi_negative_edge_thresholds(const WeightedGraph& g) {
  const WeightedGraph plus = connected_positive_part(g);
  const IndexList negatives = signed_partition(g).negative_edges;
  NegativeEdgeThresholds out;

  if (negatives.size() > 1) {
    std::vector<IndexList> paths;
    paths.reserve(negatives.size());
    for (Index k : negatives) paths.push_back(path_edge_set(plus, g.edge(k).tail, g.edge(k).head));
    for (Index i = 0; i < paths.size() && out.applicable; ++i) {
      for (Index j = i + 1; j < paths.size(); ++j) {
        IndexList shared;
        std::set_intersection(paths[i].begin(), paths[i].end(), paths[j].begin(), paths[j].end(),
                              std::back_inserter(shared));
        if (!shared.empty()) {
          out.applicable = false;
          out.overlapping = std::make_pair(negatives[i], negatives[j]);
          break;
        }
      }
    }
    if (!out.applicable) return out;
  }

  for (Index k : negatives) {
    const Edge& e = g.edge(k);
    out.thresholds.push_back({k, 1.0 / effective_resistance(plus, e.tail, e.head)});
  }
  return out;
}

TotalResistanceCheck total_resistance_necessary_check(const WeightedGraph& g, double tol) {
  const IndexList negatives = signed_partition(g).negative_edges;
  TotalResistanceCheck out;
  if (negatives.empty()) return out;
  const WeightedGraph plus = connected_positive_part(g);

  std::vector<NodePair> pairs;
  for (Index k : negatives) {
    const Edge& e = g.edge(k);
    pairs.emplace_back(e.tail, e.head);
    out.inverse_weight_sum += 1.0 / std::abs(e.weight);
  }
  out.total_resistance = pair_resistance_matrix(plus, pairs).trace();
  out.holds = out.inverse_weight_sum >= out.total_resistance * (1.0 - tol);
  return out;
}

}  // namespace resistnet
