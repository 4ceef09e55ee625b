#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/spectral.hpp"

namespace resistnet {

enum class StabilityClass { stable_agreement, marginal, unstable };

std::string_view to_string(StabilityClass c) noexcept;

struct StabilityVerdict {
  StabilityClass classification = StabilityClass::stable_agreement;
  Signature signature;           // of L(G)
  Index component_count = 0;
  IndexList witnesses;           // cut edges, or negative edges over their own threshold
};

/// Inertia of L(G) from R W R^T plus c structural zeros.
StabilityVerdict classify_stability(const WeightedGraph& g, double tol = kDefaultTol);

/// PSD test of [[|W-|^{-1}, E-^T], [E-, E+ W+ E+^T]]; falls back to is_psd(L)
/// when there are no negative edges.
bool lmi_psd_check(const WeightedGraph& g, double tol = kDefaultTol);

enum class CutVerdict { indefinite_by_cut, inconclusive };

std::string_view to_string(CutVerdict v) noexcept;

CutVerdict negative_cut_verdict(const WeightedGraph& g);

/// Largest magnitude mu such that adding edge (u, v) with weight -mu keeps L
/// PSD, i.e. 1 / R_uv(g_plus). g_plus must be connected with positive weights
/// (PreconditionError otherwise).
double single_negative_edge_threshold(const WeightedGraph& g_plus, Index u, Index v);

struct EdgeThreshold {
  Index edge = 0;
  double threshold = 0.0;
};

struct NegativeEdgeThresholds {
  bool applicable = true;
  std::vector<EdgeThreshold> thresholds;
  std::optional<std::pair<Index, Index>> overlapping;  // first pair with shared path edges
};

/// Per-negative-edge thresholds 1 / R_k(G+) when the path sets of the
/// negative edges in G+ are pairwise disjoint; otherwise applicable = false.
/// Throws PreconditionError when G+ is disconnected.
NegativeEdgeThresholds multi_negative_edge_thresholds(const WeightedGraph& g);

struct TotalResistanceCheck {
  bool holds = true;                // false certifies L is not PSD
  double inverse_weight_sum = 0.0;  // sum of 1/|w_k| over negative edges
  double total_resistance = 0.0;    // over negative-edge endpoint pairs in G+
};

/// Necessary PSD condition sum 1/|w_k| >= R_tot (compared with relative slack tol).
TotalResistanceCheck total_resistance_necessary_check(const WeightedGraph& g,
                                                      double tol = kDefaultTol);

}  // namespace resistnet
