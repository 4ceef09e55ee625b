#include "report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "resistnet/errors.hpp"
#include "resistnet/format.hpp"

namespace resistnet::cli {
namespace {

using nlohmann::json;

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json margin_json(const MarginSummary& m) {
  json per_edge = json::array();
  for (const EdgeMargin& e : m.per_edge) per_edge.push_back({{"edge", e.edge}, {"margin", number(e.margin)}});
  return {{"method", m.method},
          {"global_margin", number(m.global_margin)},
          {"binding_edge", m.binding_edge ? json(*m.binding_edge) : json(nullptr)},
          {"per_edge", per_edge}};
}

MarginSummary margin_from(const json& j) {
  MarginSummary m;
  m.method = j.at("method").get<std::string>();
  m.global_margin = read_number(j.at("global_margin"));
  if (!j.at("binding_edge").is_null()) m.binding_edge = j.at("binding_edge").get<Index>();
  for (const json& e : j.at("per_edge"))
    m.per_edge.push_back({e.at("edge").get<Index>(), read_number(e.at("margin"))});
  return m;
}

MarginSummary summarize(const MarginReport& r) {
  return {std::string(to_string(r.method)), r.global_margin, r.binding_edge, r.per_edge};
}

std::string join(const IndexList& xs) {
  std::string out;
  for (Index x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out.empty() ? "-" : out;
}

}  // namespace

AnalysisReport build_analysis_report(const WeightedGraph& g, double tol) {
  AnalysisReport r;
  r.nodes = g.node_count();
  r.edges = g.edge_count();
  r.components = connected_components(g).count;

  const StabilityVerdict verdict = classify_stability(g, tol);
  r.verdict = std::string(to_string(verdict.classification));
  r.signature = verdict.signature;
  r.witnesses = verdict.witnesses;
  r.lmi_psd = lmi_psd_check(g, tol);

  if (!signed_partition(g).negative_edges.empty()) {
    NegativeEdgeReport neg;
    neg.cut_verdict = std::string(to_string(negative_cut_verdict(g)));
    const NegativeCut cut = negative_cut_components(g);
    neg.cut_edges = cut.cut_edges;
    if (cut.cut_exists) {
      neg.thresholds_status = "not_applicable";
      neg.thresholds_note = "negative edges cut the positive subgraph";
    } else {
      try {
        const NegativeEdgeThresholds t = multi_negative_edge_thresholds(g);
        if (t.applicable) {
          neg.thresholds_status = "evaluated";
          neg.thresholds = t.thresholds;
        } else {
          neg.thresholds_status = "not_applicable";
          neg.thresholds_note = "path sets of negative edges " +
                                std::to_string(t.overlapping->first) + " and " +
                                std::to_string(t.overlapping->second) + " overlap";
        }
      } catch (const PreconditionError& e) {
        neg.thresholds_status = "not_applicable";
        neg.thresholds_note = e.what();
      } catch (const InputError& e) {
        neg.thresholds_status = "not_evaluated";
        neg.thresholds_note = e.what();
      }
      try {
        neg.total_resistance = total_resistance_necessary_check(g, tol);
      } catch (const PreconditionError&) {
      }
    }
    r.negative = std::move(neg);
  }

  if (verdict.classification == StabilityClass::stable_agreement && r.components == 1 &&
      r.edges > 0) {
    const UncertaintySpec all = UncertaintySpec::all_edges(g);
    r.margin = summarize(small_gain_margin(g, all));
    r.worst_single_edge = summarize(worst_single_edge(g));
    r.bounds = sandwich_bounds(g, all);
  }
  return r;
}

std::string to_json(const AnalysisReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["graph"] = {{"nodes", r.nodes}, {"edges", r.edges}, {"components", r.components}};
  j["verdict"] = r.verdict;
  j["signature"] = {{"n_plus", r.signature.n_plus},
                    {"n_minus", r.signature.n_minus},
                    {"n_zero", r.signature.n_zero}};
  j["witnesses"] = r.witnesses;
  j["lmi_psd"] = r.lmi_psd;

  if (r.negative) {
    const NegativeEdgeReport& n = *r.negative;
    json thresholds = json::array();
    for (const EdgeThreshold& t : n.thresholds)
      thresholds.push_back({{"edge", t.edge}, {"threshold", number(t.threshold)}});
    json neg{{"cut_verdict", n.cut_verdict},
             {"cut_edges", n.cut_edges},
             {"thresholds_status", n.thresholds_status},
             {"thresholds_note", n.thresholds_note},
             {"thresholds", thresholds},
             {"total_resistance", nullptr}};
    if (n.total_resistance)
      neg["total_resistance"] = {{"holds", n.total_resistance->holds},
                                 {"inverse_weight_sum", number(n.total_resistance->inverse_weight_sum)},
                                 {"total_resistance", number(n.total_resistance->total_resistance)}};
    j["negative_edges"] = neg;
  } else {
    j["negative_edges"] = nullptr;
  }

  j["margin"] = r.margin ? margin_json(*r.margin) : json(nullptr);
  j["worst_single_edge"] = r.worst_single_edge ? margin_json(*r.worst_single_edge) : json(nullptr);
  if (r.bounds)
    j["sandwich_bounds"] = {{"inv_max_weight", number(r.bounds->inv_max_weight)},
                            {"max_edge_resistance", number(r.bounds->max_edge_resistance)},
                            {"sigma_bar_m11", number(r.bounds->sigma_bar_m11)},
                            {"r_total", number(r.bounds->r_total)}};
  else
    j["sandwich_bounds"] = nullptr;
  return j.dump(2) + "\n";
}

AnalysisReport analysis_report_from_json(const std::string& text) {
  AnalysisReport r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
      throw ParseError("unsupported schema_version " + std::to_string(r.schema_version));
    r.nodes = j.at("graph").at("nodes").get<Index>();
    r.edges = j.at("graph").at("edges").get<Index>();
    r.components = j.at("graph").at("components").get<Index>();
    r.verdict = j.at("verdict").get<std::string>();
    r.signature = {j.at("signature").at("n_plus").get<Index>(),
                   j.at("signature").at("n_minus").get<Index>(),
                   j.at("signature").at("n_zero").get<Index>()};
    r.witnesses = j.at("witnesses").get<IndexList>();
    r.lmi_psd = j.at("lmi_psd").get<bool>();

    if (const json& n = j.at("negative_edges"); !n.is_null()) {
      NegativeEdgeReport neg;
      neg.cut_verdict = n.at("cut_verdict").get<std::string>();
      neg.cut_edges = n.at("cut_edges").get<IndexList>();
      neg.thresholds_status = n.at("thresholds_status").get<std::string>();
      neg.thresholds_note = n.at("thresholds_note").get<std::string>();
      for (const json& t : n.at("thresholds"))
        neg.thresholds.push_back({t.at("edge").get<Index>(), read_number(t.at("threshold"))});
      if (const json& tr = n.at("total_resistance"); !tr.is_null())
        neg.total_resistance = TotalResistanceCheck{tr.at("holds").get<bool>(),
                                                    read_number(tr.at("inverse_weight_sum")),
                                                    read_number(tr.at("total_resistance"))};
      r.negative = std::move(neg);
    }
    if (!j.at("margin").is_null()) r.margin = margin_from(j.at("margin"));
    if (!j.at("worst_single_edge").is_null()) r.worst_single_edge = margin_from(j.at("worst_single_edge"));
    if (const json& b = j.at("sandwich_bounds"); !b.is_null())
      r.bounds = SandwichBounds{read_number(b.at("inv_max_weight")),
                                read_number(b.at("max_edge_resistance")),
                                read_number(b.at("sigma_bar_m11")), read_number(b.at("r_total"))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("analysis report: ") + e.what());
  }
  return r;
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "graph: " << r.nodes << " nodes, " << r.edges << " edges, " << r.components
     << " component(s)\n";
  os << "verdict: " << r.verdict << '\n';
  os << "signature: " << r.signature << '\n';
  if (!r.witnesses.empty()) os << "witness edges: " << join(r.witnesses) << '\n';
  os << "lmi psd: " << (r.lmi_psd ? "yes" : "no") << '\n';
  if (r.negative) {
    const NegativeEdgeReport& n = *r.negative;
    os << "negative cut: " << n.cut_verdict << " (cut edges: " << join(n.cut_edges) << ")\n";
    os << "negative thresholds: " << n.thresholds_status;
    if (!n.thresholds_note.empty()) os << " (" << n.thresholds_note << ")";
    os << '\n';
    for (const EdgeThreshold& t : n.thresholds)
      os << "  edge " << t.edge << ": |w| < " << format_number(t.threshold) << '\n';
    if (n.total_resistance)
      os << "total resistance check: " << (n.total_resistance->holds ? "holds" : "violated")
         << " (sum 1/|w| = " << format_number(n.total_resistance->inverse_weight_sum)
         << ", R_tot = " << format_number(n.total_resistance->total_resistance) << ")\n";
  }
  if (r.margin) {
    os << "margin (all edges): " << format_number(r.margin->global_margin) << " via "
       << r.margin->method << " (marginal at equality)\n";
  }
  if (r.worst_single_edge) {
    os << "worst single edge: " << *r.worst_single_edge->binding_edge << " margin "
       << format_number(r.worst_single_edge->global_margin) << '\n';
  }
  if (r.bounds) {
    os << "bounds: 1/max w = " << format_number(r.bounds->inv_max_weight)
       << ", max R_e = " << format_number(r.bounds->max_edge_resistance)
       << ", sigma_bar(M11) = " << format_number(r.bounds->sigma_bar_m11)
       << ", R_tot = " << format_number(r.bounds->r_total) << '\n';
  }
  return os.str();
}

}  // namespace resistnet::cli
