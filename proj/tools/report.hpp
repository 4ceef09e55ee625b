#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resistnet/graph.hpp"
#include "resistnet/robustness.hpp"
#include "resistnet/spectral.hpp"
#include "resistnet/stability.hpp"

namespace resistnet::cli {

inline constexpr int kReportSchemaVersion = 1;

struct NegativeEdgeReport {
  std::string cut_verdict;  // indefinite_by_cut | inconclusive
  IndexList cut_edges;
  // evaluated | not_applicable | not_evaluated
  std::string thresholds_status = "not_evaluated";
  std::string thresholds_note;
  std::vector<EdgeThreshold> thresholds;
  std::optional<TotalResistanceCheck> total_resistance;
};

struct MarginSummary {
  std::string method;
  double global_margin = 0.0;
  std::optional<Index> binding_edge;
  std::vector<EdgeMargin> per_edge;
};

/// Everything `analyze` prints. Serialized with sorted keys and 12-digit
/// floats; infinities become null.
struct AnalysisReport {
  int schema_version = kReportSchemaVersion;
  Index nodes = 0;
  Index edges = 0;
  Index components = 0;
  std::string verdict;
  Signature signature;
  IndexList witnesses;
  bool lmi_psd = false;
  std::optional<NegativeEdgeReport> negative;  // present when some weight is negative
  std::optional<MarginSummary> margin;         // present for stable_agreement
  std::optional<MarginSummary> worst_single_edge;
  std::optional<SandwichBounds> bounds;
};

AnalysisReport build_analysis_report(const WeightedGraph& g, double tol);

std::string to_json(const AnalysisReport& r);

/// Throws ParseError on schema mismatch.
AnalysisReport analysis_report_from_json(const std::string& text);

std::string to_text(const AnalysisReport& r);

}  // namespace resistnet::cli
