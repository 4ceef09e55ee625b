#pragma once

#include <span>
#include <utility>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"

namespace resistnet {

enum class ResistanceMethod {
  pseudoinverse,  // (e_u - e_v)^T L^+ (e_u - e_v)
  edge_form,      // forest left-inverse and (R W R^T)^{-1}
};

using NodePair = std::pair<Index, Index>;

/// Effective resistance between u and v. Values may be negative on graphs
/// with negative weights. Throws InfiniteResistanceError when u and v lie in
/// different components and SingularityError when the edge form meets a
/// singular R W R^T.
double effective_resistance(const WeightedGraph& g, Index u, Index v,
                            ResistanceMethod method = ResistanceMethod::edge_form);

/// Gram matrix of pair resistances: entry (i, j) is
/// b_i^T (E_F^L)^T (R W R^T)^{-1} E_F^L b_j with b = e_u - e_v. The graph must
/// be connected.
Eigen::MatrixXd pair_resistance_matrix(const WeightedGraph& g, std::span<const NodePair> pairs);

/// Resistance matrix over an edge subset; diagonal entry k is the effective
/// resistance across the endpoints of edge_subset[k].
Eigen::MatrixXd resistance_matrix(const WeightedGraph& g, std::span<const Index> edge_subset);

/// Trace of resistance_matrix.
double total_effective_resistance(const WeightedGraph& g, std::span<const Index> edge_subset);

/// L^+ assembled from the forest route, (E_F^L)^T (R W R^T)^{-1} E_F^L.
Eigen::MatrixXd laplacian_pseudoinverse_edge_form(const WeightedGraph& g);

}  // namespace resistnet
