#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace resistnet {

using Index = std::size_t;
using IndexList = std::vector<Index>;

/// Undirected edge with canonical orientation tail < head.
struct Edge {
  Index tail = 0;
  Index head = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with real, possibly negative, edge weights.
///
/// Edges keep the order in which they were supplied; every matrix built from
/// a graph uses that order for its edge-indexed rows/columns. Orientation is
/// normalized so that the incidence column of edge k has +1 at the smaller
/// node index.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and normalizes. Throws GraphError naming the offending edge on
  /// self-loops, duplicate undirected pairs, out-of-range indices or
  /// zero/non-finite weights.
  WeightedGraph(Index node_count, std::span<const Edge> edges);
  WeightedGraph(Index node_count, std::initializer_list<Edge> edges)
      : WeightedGraph(node_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  [[nodiscard]] Index node_count() const noexcept { return node_count_; }
  [[nodiscard]] Index edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(Index k) const { return edges_.at(k); }

  /// Edge weights as a vector in edge order.
  [[nodiscard]] Eigen::VectorXd weights() const;

  /// Index of the edge joining u and v, or edge_count() when absent.
  [[nodiscard]] Index find_edge(Index u, Index v) const noexcept;

  /// Subgraph on the full node set keeping the listed edges (in listed order).
  [[nodiscard]] WeightedGraph edge_subgraph(std::span<const Index> keep) const;

  /// Copy without edge k; remaining edges keep their relative order.
  [[nodiscard]] WeightedGraph without_edge(Index k) const;

  /// Copy with one extra edge appended at index edge_count().
  [[nodiscard]] WeightedGraph with_edge(Edge e) const;

 private:
  Index node_count_ = 0;
  std::vector<Edge> edges_;
};

/// Convenience constructor mirroring the file schema.
WeightedGraph build_graph(Index node_count, std::span<const Edge> edges);

/// Spanning-forest / cycle split of the edge set and its cut-space matrices.
struct ForestDecomposition {
  IndexList forest_edges;      // ascending edge indices
  IndexList cycle_edges;       // ascending edge indices
  Index component_count = 0;
  Eigen::MatrixXd cut_set;     // R: |forest| x |E|, columns in graph edge order
  Eigen::MatrixXd tucker;      // T: |forest| x |cycle|, columns follow cycle_edges
  Eigen::MatrixXd left_inverse;  // (E_F^T E_F)^{-1} E_F^T : |forest| x n
};

struct Components {
  Index count = 0;
  IndexList labels;  // node -> component id, ids ordered by smallest member
};

struct SignedPartition {
  IndexList positive_edges;
  IndexList negative_edges;
};

struct NegativeCut {
  bool cut_exists = false;
  IndexList cut_edges;
};

/// Incidence matrix (n x m): +1 at tail, -1 at head.
Eigen::MatrixXd incidence_matrix(const WeightedGraph& g);

Components connected_components(const WeightedGraph& g);

/// BFS forest from the lowest-index node of each component, neighbors in
/// index order.
ForestDecomposition spanning_forest(const WeightedGraph& g);

/// L = E W E^T.
Eigen::MatrixXd laplacian(const WeightedGraph& g);

/// E diag(weights) E^T for an explicit weight vector (zeros allowed); used for
/// perturbed networks.
Eigen::MatrixXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& weights);

/// W^{1/2} E^T E W^{1/2}; only defined for nonnegative weights (InputError otherwise).
Eigen::MatrixXd edge_laplacian(const WeightedGraph& g);

/// Unweighted forest edge Laplacian E_F^T E_F.
Eigen::MatrixXd forest_edge_laplacian(const WeightedGraph& g, const ForestDecomposition& f);

/// R W R^T, the cut-space form that carries the nonzero inertia of L.
Eigen::MatrixXd cut_space_form(const ForestDecomposition& f, const Eigen::VectorXd& weights);
Eigen::MatrixXd cut_space_form(const WeightedGraph& g, const ForestDecomposition& f);

/// L_e(F) R W R^T.
Eigen::MatrixXd essential_edge_laplacian(const WeightedGraph& g, const ForestDecomposition& f);

SignedPartition signed_partition(const WeightedGraph& g);
WeightedGraph positive_subgraph(const WeightedGraph& g);
WeightedGraph negative_subgraph(const WeightedGraph& g);

/// Negative edges joining distinct components of the positive subgraph.
NegativeCut negative_cut_components(const WeightedGraph& g);

inline constexpr Index kDefaultPathEdgeCap = 20;

/// Edges lying on at least one simple u-v path, ascending. Exhaustive
/// enumeration; graphs with more than `max_edges` edges are rejected
/// (InputError). Throws InputError when u == v.
IndexList path_edge_set(const WeightedGraph& g, Index u, Index v,
                        Index max_edges = kDefaultPathEdgeCap);

/// Harary balance: negative edges bichromatic, positive edges monochromatic.
bool is_balanced(const WeightedGraph& g);

}  // namespace resistnet
