#include "resistnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <string>

#include "resistnet/errors.hpp"

namespace resistnet {
namespace {

std::string describe(Index k, const Edge& e) {
  std::ostringstream os;
  os << "edge " << k << " (" << e.tail << ", " << e.head << ", w=" << e.weight << ")";
  return os.str();
}

// Per-node neighbor lists sorted by neighbor index: (neighbor, edge index).
std::vector<std::vector<std::pair<Index, Index>>> adjacency(const WeightedGraph& g) {
  std::vector<std::vector<std::pair<Index, Index>>> adj(g.node_count());
  for (Index k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    adj[e.tail].emplace_back(e.head, k);
    adj[e.head].emplace_back(e.tail, k);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

}  // namespace

WeightedGraph::WeightedGraph(Index node_count, std::span<const Edge> edges)
    : node_count_(node_count) {
  if (node_count == 0) throw GraphError("graph must have at least one node");
  std::set<std::pair<Index, Index>> seen;
  edges_.reserve(edges.size());
  for (Index k = 0; k < edges.size(); ++k) {
    Edge e = edges[k];
    if (e.tail >= node_count || e.head >= node_count)
      throw GraphError(describe(k, e) + ": node index out of range [0, " +
                       std::to_string(node_count) + ")");
    if (e.tail == e.head) throw GraphError(describe(k, e) + ": self-loop");
    if (!std::isfinite(e.weight)) throw GraphError(describe(k, e) + ": non-finite weight");
    if (e.weight == 0.0) throw GraphError(describe(k, e) + ": zero weight");
    if (e.tail > e.head) std::swap(e.tail, e.head);
    if (!seen.emplace(e.tail, e.head).second)
      throw GraphError(describe(k, e) + ": duplicate undirected edge");
    edges_.push_back(e);
  }
}

Eigen::VectorXd WeightedGraph::weights() const {
  Eigen::VectorXd w(edges_.size());
  for (Index k = 0; k < edges_.size(); ++k) w(static_cast<Eigen::Index>(k)) = edges_[k].weight;
  return w;
}

Index WeightedGraph::find_edge(Index u, Index v) const noexcept {
  if (u > v) std::swap(u, v);
  for (Index k = 0; k < edges_.size(); ++k)
    if (edges_[k].tail == u && edges_[k].head == v) return k;
  return edges_.size();
}

WeightedGraph WeightedGraph::edge_subgraph(std::span<const Index> keep) const {
  std::vector<Edge> kept;
  kept.reserve(keep.size());
  for (Index k : keep) kept.push_back(edges_.at(k));
  return WeightedGraph(node_count_, kept);
}

WeightedGraph WeightedGraph::without_edge(Index k) const {
  if (k >= edges_.size()) throw GraphError("edge index " + std::to_string(k) + " out of range");
  std::vector<Edge> kept;
  kept.reserve(edges_.size() - 1);
  for (Index j = 0; j < edges_.size(); ++j)
    if (j != k) kept.push_back(edges_[j]);
  return WeightedGraph(node_count_, kept);
}

WeightedGraph WeightedGraph::with_edge(Edge e) const {
  std::vector<Edge> all(edges_);
  all.push_back(e);
  return WeightedGraph(node_count_, all);
}

WeightedGraph build_graph(Index node_count, std::span<const Edge> edges) {
  return WeightedGraph(node_count, edges);
}

Eigen::MatrixXd incidence_matrix(const WeightedGraph& g) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.node_count()),
                                            static_cast<Eigen::Index>(g.edge_count()));
  for (Index k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const auto col = static_cast<Eigen::Index>(k);
    E(static_cast<Eigen::Index>(e.tail), col) = 1.0;
    E(static_cast<Eigen::Index>(e.head), col) = -1.0;
  }
  return E;
}

Components connected_components(const WeightedGraph& g) {
  const auto adj = adjacency(g);
  constexpr Index unset = static_cast<Index>(-1);
  Components out;
  out.labels.assign(g.node_count(), unset);
  for (Index start = 0; start < g.node_count(); ++start) {
    if (out.labels[start] != unset) continue;
    const Index id = out.count++;
    std::deque<Index> queue{start};
    out.labels[start] = id;
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (auto [v, k] : adj[u]) {
        (void)k;
        if (out.labels[v] == unset) {
          out.labels[v] = id;
          queue.push_back(v);
        }
      }
    }
  }
  return out;
}

ForestDecomposition spanning_forest(const WeightedGraph& g) {
  const auto adj = adjacency(g);
  std::vector<bool> visited(g.node_count(), false);
  std::vector<bool> in_forest(g.edge_count(), false);
  ForestDecomposition f;

  for (Index start = 0; start < g.node_count(); ++start) {
    if (visited[start]) continue;
    ++f.component_count;
    std::deque<Index> queue{start};
    visited[start] = true;
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (auto [v, k] : adj[u]) {
        if (visited[v]) continue;
        visited[v] = true;
        in_forest[k] = true;
        queue.push_back(v);
      }
    }
  }
  for (Index k = 0; k < g.edge_count(); ++k)
    (in_forest[k] ? f.forest_edges : f.cycle_edges).push_back(k);

  const Eigen::MatrixXd E = incidence_matrix(g);
  const auto nf = static_cast<Eigen::Index>(f.forest_edges.size());
  const auto nc = static_cast<Eigen::Index>(f.cycle_edges.size());
  Eigen::MatrixXd EF(E.rows(), nf);
  Eigen::MatrixXd EC(E.rows(), nc);
  for (Eigen::Index i = 0; i < nf; ++i)
    EF.col(i) = E.col(static_cast<Eigen::Index>(f.forest_edges[static_cast<Index>(i)]));
  for (Eigen::Index j = 0; j < nc; ++j)
    EC.col(j) = E.col(static_cast<Eigen::Index>(f.cycle_edges[static_cast<Index>(j)]));

  if (nf > 0) {
    const Eigen::LLT<Eigen::MatrixXd> chol(EF.transpose() * EF);
    f.left_inverse = chol.solve(EF.transpose());
    f.tucker = f.left_inverse * EC;
  } else {
    f.left_inverse.resize(0, E.rows());
    f.tucker.resize(0, nc);
  }
  // Tucker entries are integral in exact arithmetic.
  f.tucker = f.tucker.array().round().matrix();

  f.cut_set = Eigen::MatrixXd::Zero(nf, static_cast<Eigen::Index>(g.edge_count()));
  for (Eigen::Index i = 0; i < nf; ++i)
    f.cut_set(i, static_cast<Eigen::Index>(f.forest_edges[static_cast<Index>(i)])) = 1.0;
  for (Eigen::Index j = 0; j < nc; ++j)
    f.cut_set.col(static_cast<Eigen::Index>(f.cycle_edges[static_cast<Index>(j)])) = f.tucker.col(j);
  return f;
}

Eigen::MatrixXd laplacian(const WeightedGraph& g, const Eigen::VectorXd& weights) {
  if (static_cast<Index>(weights.size()) != g.edge_count())
    throw InputError("weight vector length does not match edge count");
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (Index k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const auto i = static_cast<Eigen::Index>(e.tail);
    const auto j = static_cast<Eigen::Index>(e.head);
    const double w = weights(static_cast<Eigen::Index>(k));
    L(i, i) += w;
    L(j, j) += w;
    L(i, j) -= w;
    L(j, i) -= w;
  }
  return L;
}

Eigen::MatrixXd laplacian(const WeightedGraph& g) { return laplacian(g, g.weights()); }

Eigen::MatrixXd edge_laplacian(const WeightedGraph& g) {
  const Eigen::VectorXd w = g.weights();
  if ((w.array() < 0.0).any())
    throw InputError("weighted edge Laplacian requires nonnegative weights");
  const Eigen::VectorXd root = w.array().sqrt();
  const Eigen::MatrixXd E = incidence_matrix(g);
  return root.asDiagonal() * (E.transpose() * E) * root.asDiagonal();
}

Eigen::MatrixXd forest_edge_laplacian(const WeightedGraph& g, const ForestDecomposition& f) {
  const Eigen::MatrixXd E = incidence_matrix(g);
  Eigen::MatrixXd EF(E.rows(), static_cast<Eigen::Index>(f.forest_edges.size()));
  for (Index i = 0; i < f.forest_edges.size(); ++i)
    EF.col(static_cast<Eigen::Index>(i)) = E.col(static_cast<Eigen::Index>(f.forest_edges[i]));
  return EF.transpose() * EF;
}

Eigen::MatrixXd cut_space_form(const ForestDecomposition& f, const Eigen::VectorXd& weights) {
  if (weights.size() != f.cut_set.cols())
    throw InputError("weight vector length does not match edge count");
  return f.cut_set * weights.asDiagonal() * f.cut_set.transpose();
}

Eigen::MatrixXd cut_space_form(const WeightedGraph& g, const ForestDecomposition& f) {
  return cut_space_form(f, g.weights());
}

Eigen::MatrixXd essential_edge_laplacian(const WeightedGraph& g, const ForestDecomposition& f) {
  return forest_edge_laplacian(g, f) * cut_space_form(g, f);
}

SignedPartition signed_partition(const WeightedGraph& g) {
  SignedPartition p;
  for (Index k = 0; k < g.edge_count(); ++k)
    (g.edge(k).weight > 0.0 ? p.positive_edges : p.negative_edges).push_back(k);
  return p;
}

WeightedGraph positive_subgraph(const WeightedGraph& g) {
  return g.edge_subgraph(signed_partition(g).positive_edges);
}

WeightedGraph negative_subgraph(const WeightedGraph& g) {
  return g.edge_subgraph(signed_partition(g).negative_edges);
}

NegativeCut negative_cut_components(const WeightedGraph& g) {
  const Components plus = connected_components(positive_subgraph(g));
  const Components whole = connected_components(g);
  NegativeCut out;
  out.cut_exists = plus.count > whole.count;
  for (Index k : signed_partition(g).negative_edges) {
    const Edge& e = g.edge(k);
    if (plus.labels[e.tail] != plus.labels[e.head]) out.cut_edges.push_back(k);
  }
  return out;
}

IndexList path_edge_set(const WeightedGraph& g, Index u, Index v, Index max_edges) {
  if (u >= g.node_count() || v >= g.node_count())
    throw InputError("path endpoints out of range");
  if (u == v) throw InputError("path_edge_set requires distinct endpoints");
  if (g.edge_count() > max_edges)
    throw InputError("path_edge_set enumeration is capped at " + std::to_string(max_edges) +
                     " edges; graph has " + std::to_string(g.edge_count()));

  const auto adj = adjacency(g);
  std::vector<bool> on_path_node(g.node_count(), false);
  std::vector<bool> covered(g.edge_count(), false);
  IndexList stack_edges;

  // Depth-first enumeration of simple paths; every edge on a completed path is covered.
  auto dfs = [&](auto&& self, Index x) -> void {
    if (x == v) {
      for (Index k : stack_edges) covered[k] = true;
      return;
    }
    on_path_node[x] = true;
    for (auto [y, k] : adj[x]) {
      if (on_path_node[y]) continue;
      stack_edges.push_back(k);
      self(self, y);
      stack_edges.pop_back();
    }
    on_path_node[x] = false;
  };
  dfs(dfs, u);

  IndexList out;
  for (Index k = 0; k < g.edge_count(); ++k)
    if (covered[k]) out.push_back(k);
  return out;
}

bool is_balanced(const WeightedGraph& g) {
  const auto adj = adjacency(g);
  std::vector<int> side(g.node_count(), -1);
  for (Index start = 0; start < g.node_count(); ++start) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::deque<Index> queue{start};
    while (!queue.empty()) {
      const Index x = queue.front();
      queue.pop_front();
      for (auto [y, k] : adj[x]) {
        const int want = g.edge(k).weight > 0.0 ? side[x] : 1 - side[x];
        if (side[y] < 0) {
          side[y] = want;
          queue.push_back(y);
        } else if (side[y] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace resistnet
