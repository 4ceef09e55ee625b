#include "resistnet/resistance.hpp"

#include <string>

#include "cut_space.hpp"
#include "resistnet/errors.hpp"
#include "resistnet/spectral.hpp"

namespace resistnet {
namespace {

void require_same_component(const WeightedGraph& g, Index u, Index v) {
  if (u >= g.node_count() || v >= g.node_count())
    throw InputError("node index out of range");
  if (u == v) throw InputError("effective resistance requires distinct nodes");
  const Components comps = connected_components(g);
  if (comps.labels[u] != comps.labels[v])
    throw InfiniteResistanceError("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                                  " lie in different components");
}

void require_connected(const WeightedGraph& g) {
  if (connected_components(g).count != 1)
    throw PreconditionError("resistance matrix requires a connected graph");
}

}  // namespace

double effective_resistance(const WeightedGraph& g, Index u, Index v, ResistanceMethod method) {
  require_same_component(g, u, v);
  const auto iu = static_cast<Eigen::Index>(u);
  const auto iv = static_cast<Eigen::Index>(v);
  if (method == ResistanceMethod::pseudoinverse) {
    const Eigen::MatrixXd Lp = pseudoinverse(laplacian(g));
    return Lp(iu, iu) - 2.0 * Lp(iu, iv) + Lp(iv, iv);
  }
  const ForestDecomposition f = spanning_forest(g);
  const detail::CutSpaceInverse inv(f, g.weights());
  // Signed forest path from u to v: E_F y = e_u - e_v.
  const Eigen::VectorXd y = f.left_inverse.col(iu) - f.left_inverse.col(iv);
  return y.dot(inv.solve(y).col(0));
}

Eigen::MatrixXd pair_resistance_matrix(const WeightedGraph& g, std::span<const NodePair> pairs) {
  require_connected(g);
  const ForestDecomposition f = spanning_forest(g);
  const detail::CutSpaceInverse inv(f, g.weights());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.node_count()),
                                            static_cast<Eigen::Index>(pairs.size()));
  for (Index k = 0; k < pairs.size(); ++k) {
    const auto [u, v] = pairs[k];
    if (u >= g.node_count() || v >= g.node_count() || u == v)
      throw InputError("invalid node pair at position " + std::to_string(k));
    B(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(k)) += 1.0;
    B(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(k)) -= 1.0;
  }
  const Eigen::MatrixXd Y = f.left_inverse * B;
  Eigen::MatrixXd M = Y.transpose() * inv.solve(Y);
  return 0.5 * (M + M.transpose());
}

Eigen::MatrixXd resistance_matrix(const WeightedGraph& g, std::span<const Index> edge_subset) {
  std::vector<NodePair> pairs;
  pairs.reserve(edge_subset.size());
  for (Index k : edge_subset) {
    const Edge& e = g.edge(k);
    pairs.emplace_back(e.tail, e.head);
  }
  return pair_resistance_matrix(g, pairs);
}

double total_effective_resistance(const WeightedGraph& g, std::span<const Index> edge_subset) {
  return resistance_matrix(g, edge_subset).trace();
}

Eigen::MatrixXd laplacian_pseudoinverse_edge_form(const WeightedGraph& g) {
  const ForestDecomposition f = spanning_forest(g);
  const detail::CutSpaceInverse inv(f, g.weights());
  Eigen::MatrixXd P = f.left_inverse.transpose() * inv.solve(f.left_inverse);
  return 0.5 * (P + P.transpose());
}

}  // namespace resistnet
