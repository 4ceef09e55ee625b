#pragma once

// Reference computations that share no code with the library: plain loops,
// a cyclic Jacobi eigensolver, Gauss-Jordan inversion and exhaustive search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

struct RawEdge {
  std::size_t u;
  std::size_t v;
  double w;
};

inline std::vector<RawEdge> raw_edges(const resistnet::WeightedGraph& g) {
  std::vector<RawEdge> out;
  for (const auto& e : g.edges()) out.push_back({e.tail, e.head, e.weight});
  return out;
}

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<double>(n, 0.0)); }

inline Dense laplacian(std::size_t n, const std::vector<RawEdge>& edges) {
  Dense L = zeros(n);
  for (const RawEdge& e : edges) {
    L[e.u][e.u] += e.w;
    L[e.v][e.v] += e.w;
    L[e.u][e.v] -= e.w;
    L[e.v][e.u] -= e.w;
  }
  return L;
}

inline Dense laplacian(const resistnet::WeightedGraph& g) {
  return laplacian(g.node_count(), raw_edges(g));
}

inline Dense from_eigen(const Eigen::MatrixXd& m) {
  Dense out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
/// Returns ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(Dense a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct Inertia {
  std::size_t plus = 0, minus = 0, zero = 0;
};

inline Inertia inertia(const std::vector<double>& ev, double tol = 1e-9) {
  double big = 1.0;
  for (double x : ev) big = std::max(big, std::abs(x));
  Inertia s;
  for (double x : ev) {
    if (std::abs(x) <= tol * big) ++s.zero;
    else if (x > 0) ++s.plus;
    else ++s.minus;
  }
  return s;
}

inline Inertia inertia(const Dense& a, double tol = 1e-9) { return inertia(jacobi_eigenvalues(a), tol); }

/// Gauss-Jordan with partial pivoting; throws on singular input.
inline Dense inverse(Dense a) {
  const std::size_t n = a.size();
  Dense inv = zeros(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) throw std::runtime_error("oracle: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= d;
      inv[col][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

/// L^+ = (L + 11^T/n)^{-1} - 11^T/n, valid when the null space of L is span(1).
inline Dense laplacian_pinv(const Dense& L) {
  const std::size_t n = L.size();
  const double j = 1.0 / static_cast<double>(n);
  Dense a = L;
  for (auto& row : a)
    for (double& x : row) x += j;
  Dense inv = inverse(a);
  for (auto& row : inv)
    for (double& x : row) x -= j;
  return inv;
}

/// Effective resistance by grounding v and solving the reduced system.
inline double resistance(std::size_t n, const std::vector<RawEdge>& edges, std::size_t u, std::size_t v) {
  const Dense L = laplacian(n, edges);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (i != v) keep.push_back(i);
  Dense red = zeros(n - 1);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) red[i][j] = L[keep[i]][keep[j]];
  const Dense inv = inverse(red);
  const auto iu = static_cast<std::size_t>(std::find(keep.begin(), keep.end(), u) - keep.begin());
  return inv[iu][iu];
}

inline bool connected(std::size_t n, const std::vector<RawEdge>& edges) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = n;
  for (const RawEdge& e : edges) {
    const std::size_t a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups == 1;
}

/// Edges on at least one simple u-v path, by enumerating every simple path.
inline std::vector<std::size_t> path_edges(std::size_t n, const std::vector<RawEdge>& edges, std::size_t u,
                                           std::size_t v) {
  std::vector<bool> used(edges.size(), false), visited(n, false);
  std::vector<std::size_t> stack;
  auto dfs = [&](auto&& self, std::size_t x) -> void {
    if (x == v) {
      for (std::size_t k : stack) used[k] = true;
      return;
    }
    visited[x] = true;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      std::size_t y;
      if (edges[k].u == x) y = edges[k].v;
      else if (edges[k].v == x) y = edges[k].u;
      else continue;
      if (visited[y]) continue;
      stack.push_back(k);
      self(self, y);
      stack.pop_back();
    }
    visited[x] = false;
  };
  dfs(dfs, u);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (used[k]) out.push_back(k);
  return out;
}

/// Tries every 2-coloring: negative edges bichromatic, positive monochromatic.
inline bool balanced(std::size_t n, const std::vector<RawEdge>& edges) {
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    bool ok = true;
    for (const RawEdge& e : edges) {
      const bool same = ((mask >> e.u) & 1UL) == ((mask >> e.v) & 1UL);
      if ((e.w > 0) != same) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

inline double max_abs_diff(const Dense& a, const Eigen::MatrixXd& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      d = std::max(d, std::abs(a[i][j] - b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  return d;
}

}  // namespace oracle
