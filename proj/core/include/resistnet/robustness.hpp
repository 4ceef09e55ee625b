#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "resistnet/graph.hpp"
#include "resistnet/spectral.hpp"

namespace resistnet {

/// Set of edges whose weights are uncertain, and the perturbation bound.
struct UncertaintySpec {
  IndexList uncertain_edges;
  double bound = 0.0;

  static UncertaintySpec all_edges(const WeightedGraph& g, double bound = 0.0);
  static UncertaintySpec single(Index edge, double bound = 0.0);
};

/// |E| x |E_Delta| 0/1 selection matrix, one 1 per column.
Eigen::MatrixXd selection_matrix(const WeightedGraph& g, const UncertaintySpec& spec);

struct Sector {
  double alpha = 0.0;
  double beta = 0.0;
};

/// One sector per uncertain edge, in UncertaintySpec order.
using SectorSpec = std::vector<Sector>;

enum class MarginMethod { exact_single_edge, small_gain, uniform_weight, disjoint_paths };

std::string_view to_string(MarginMethod m) noexcept;

struct SandwichBounds {
  double inv_max_weight = 0.0;       // (max_e w_e)^{-1}; reported, not guaranteed below the next
  double max_edge_resistance = 0.0;  // max diagonal of M11(0)
  double sigma_bar_m11 = 0.0;        // largest singular value of M11(0)
  double r_total = 0.0;              // trace of M11(0)
};

struct EdgeMargin {
  Index edge = 0;
  double margin = 0.0;
};

/// Robustness margins are open bounds: stability holds for ||Delta|| < global_margin.
struct MarginReport {
  double global_margin = 0.0;  // +inf when nothing is uncertain
  MarginMethod method = MarginMethod::small_gain;
  std::vector<EdgeMargin> per_edge;
  std::optional<Index> binding_edge;
  SandwichBounds bounds;
};

/// Throws PreconditionError unless g is connected with s(L) = (n-1, 0, 1).
void require_nominal_stability(const WeightedGraph& g, double tol = kDefaultTol);

/// P^T R^T (R W R^T)^{-1} R P.
Eigen::MatrixXd m11_at_zero(const WeightedGraph& g, const UncertaintySpec& spec);

/// P^T R^T (j omega I + L_ess)^{-1} L_e(F) R P.
Eigen::MatrixXcd m11_frequency_response(const WeightedGraph& g, const UncertaintySpec& spec,
                                        double omega);

/// 1 / sigma_bar(M11(0)); promoted to exact_single_edge or uniform_weight when
/// those structures apply.
MarginReport small_gain_margin(const WeightedGraph& g, const UncertaintySpec& spec);

/// Exact margin 1 / R_uv(G) for uncertainty on edge e alone.
MarginReport single_edge_margin(const WeightedGraph& g, Index e);

/// Per-edge single-edge margins; binding edge is the argmin (lowest index on ties).
MarginReport worst_single_edge(const WeightedGraph& g);

/// min over uncertain edges of 1 / R_e(G) when their path sets are pairwise
/// disjoint; NotApplicableError otherwise.
MarginReport disjoint_paths_margin(const WeightedGraph& g, const UncertaintySpec& spec);

SandwichBounds sandwich_bounds(const WeightedGraph& g, const UncertaintySpec& spec);

struct SectorVerdict {
  bool stable = false;
  bool gain_condition = false;
  double gain_slack = 0.0;           // 1/||M11|| - max |alpha|
  bool quadratic_condition = false;
  double quadratic_min = 0.0;        // min eigenvalue of 2W + P(K^2 - 2K - I)P^T
  double proof_form_min = 0.0;       // same for 2W + P(-K^2 + 2K - I)P^T
  bool forms_disagree = false;
  std::string note;
};

/// Small-gain and quadratic sector conditions for sector-bounded couplings.
SectorVerdict sector_stability_check(const WeightedGraph& g, const UncertaintySpec& spec,
                                     const SectorSpec& sectors, double tol = kDefaultTol);

/// |alpha| < 1/R_uv(G) and (beta-alpha)^2 - 2(beta-alpha) - 1 > -2 w_uv.
bool single_edge_sector_check(const WeightedGraph& g, Index e, double alpha, double beta);

}  // namespace resistnet
