#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"
#include "resistnet/errors.hpp"
#include "resistnet/resistance.hpp"
#include "resistnet/robustness.hpp"
#include "resistnet/stability.hpp"

using namespace resistnet;

namespace {

WeightedGraph uniform_triangle(double w) { return WeightedGraph(3, {{0, 1, w}, {1, 2, w}, {0, 2, w}}); }

WeightedGraph bowtie(double w1, double w2) {
  return WeightedGraph(5, {{0, 1, w1}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, w2}, {3, 4, 1.0}, {2, 4, 1.0}});
}

UncertaintySpec random_subset(gen::Rng& rng, const WeightedGraph& g) {
  UncertaintySpec spec;
  for (Index k = 0; k < g.edge_count(); ++k)
    if (gen::uniform(rng, 0, 1) < 0.5) spec.uncertain_edges.push_back(k);
  if (spec.uncertain_edges.empty()) spec.uncertain_edges.push_back(0);
  return spec;
}

}  // namespace

TEST(M11, SingleEdgeIsResistance) {
  const WeightedGraph g = bowtie(2.0, 0.5);
  const Eigen::MatrixXd m = m11_at_zero(g, UncertaintySpec::single(3));
  ASSERT_EQ(m.rows(), 1);
  EXPECT_NEAR(m(0, 0), effective_resistance(g, 2, 3), 1e-12);
}

TEST(M11, UniformWeightsGiveScaledProjection) {
  for (double a : {0.5, 1.0, 2.0}) {
    const WeightedGraph g = uniform_triangle(a);
    const Eigen::MatrixXd m = m11_at_zero(g, UncertaintySpec::all_edges(g));
    const Eigen::MatrixXd p = a * m;
    EXPECT_LE((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(spectral_norm(m), 1.0 / a, 1e-12);
  }
  const WeightedGraph tri = uniform_triangle(1.0);
  EXPECT_NEAR(m11_at_zero(tri, UncertaintySpec::all_edges(tri)).trace(), 2.0, 1e-12);
}

TEST(M11, MatchesResistanceMatrix) {
  gen::Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    const WeightedGraph g = gen::connected_graph(rng, gen::pick(rng, 2, 8), 0.4, 0.5, 2.0);
    const UncertaintySpec spec = random_subset(rng, g);
    EXPECT_LE((m11_at_zero(g, spec) - resistance_matrix(g, spec.uncertain_edges)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(M11, RequiresNominalStability) {
  const WeightedGraph bad(3, {{0, 1, 1.0}, {1, 2, -1.0}});
  EXPECT_THROW(m11_at_zero(bad, UncertaintySpec::all_edges(bad)), PreconditionError);
  const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_THROW(require_nominal_stability(split), PreconditionError);
  EXPECT_NO_THROW(require_nominal_stability(uniform_triangle(1.0)));
}

TEST(M11Frequency, ZeroFrequencyAndDecay) {
  const WeightedGraph g = bowtie(2.0, 0.5);
  const UncertaintySpec spec = UncertaintySpec::all_edges(g);
  const Eigen::MatrixXcd m0 = m11_frequency_response(g, spec, 0.0);
  EXPECT_LE((m0.real() - m11_at_zero(g, spec)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE(m0.imag().cwiseAbs().maxCoeff(), 1e-12);

  const WeightedGraph tri = uniform_triangle(1.0);
  EXPECT_LE(spectral_norm(m11_frequency_response(tri, UncertaintySpec::all_edges(tri), 1e6)), 1e-4);
}

TEST(M11Frequency, PeakAtZero) {
  const WeightedGraph tri = uniform_triangle(1.0);
  const UncertaintySpec one = UncertaintySpec::single(0);
  const double peak = spectral_norm(m11_at_zero(tri, one));
  for (double w : {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0})
    EXPECT_LE(spectral_norm(m11_frequency_response(tri, one, w)), peak + 1e-8);

  gen::Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    const WeightedGraph g = gen::connected_graph(rng, gen::pick(rng, 2, 8), 0.4, 0.5, 2.0);
    const UncertaintySpec spec = random_subset(rng, g);
    const double at_zero = spectral_norm(m11_at_zero(g, spec));
    for (int i = 0; i < 50; ++i) {
      const double w = std::pow(10.0, -2.0 + 5.0 * i / 49.0);
      EXPECT_LE(spectral_norm(m11_frequency_response(g, spec, w)), at_zero + 1e-8);
    }
  }
}

TEST(SmallGainMargin, Examples) {
  const WeightedGraph tri = uniform_triangle(1.0);
  const MarginReport single = small_gain_margin(tri, UncertaintySpec::single(2));
  EXPECT_EQ(single.method, MarginMethod::exact_single_edge);
  EXPECT_NEAR(single.global_margin, 1.5, 1e-12);
  EXPECT_EQ(single.binding_edge, Index{2});

  const WeightedGraph two = uniform_triangle(2.0);
  const MarginReport uniform = small_gain_margin(two, UncertaintySpec::all_edges(two));
  EXPECT_EQ(uniform.method, MarginMethod::uniform_weight);
  EXPECT_DOUBLE_EQ(uniform.global_margin, 2.0);
  EXPECT_NEAR(small_gain_margin(tri, UncertaintySpec::all_edges(tri)).global_margin, 1.0, 1e-12);

  const MarginReport general = small_gain_margin(bowtie(2.0, 0.5), UncertaintySpec{{0, 3}, 0.0});
  EXPECT_EQ(general.method, MarginMethod::small_gain);

  const MarginReport none = small_gain_margin(tri, UncertaintySpec{});
  EXPECT_TRUE(std::isinf(none.global_margin));
}

TEST(SmallGainMargin, NeverOverstatesRobustness) {
  gen::Rng rng(63);
  for (int t = 0; t < 500; ++t) {
    const WeightedGraph g = gen::connected_graph(rng, gen::pick(rng, 2, 8), 0.4, 0.5, 2.0);
    const UncertaintySpec spec = random_subset(rng, g);
    const double margin = small_gain_margin(g, spec).global_margin;
    // Diagonal Delta with ||Delta|| = 0.99 margin, worst entries negative.
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (std::size_t i = 0; i < spec.uncertain_edges.size(); ++i) {
      const double scale = i == 0 ? 1.0 : gen::uniform(rng, -1, 1);
      double& w = edges[spec.uncertain_edges[i]].weight;
      w -= 0.99 * margin * scale;
    }
    std::vector<oracle::RawEdge> raw;
    for (const Edge& e : edges) raw.push_back({e.tail, e.head, e.weight});
    EXPECT_EQ(oracle::inertia(oracle::laplacian(g.node_count(), raw)).minus, 0u);
  }
}

TEST(SingleEdgeMargin, Examples) {
  for (Index k = 0; k < 3; ++k) EXPECT_NEAR(single_edge_margin(uniform_triangle(1.0), k).global_margin, 1.5, 1e-12);
  EXPECT_NEAR(single_edge_margin(WeightedGraph(2, {{0, 1, 0.7}}), 0).global_margin, 0.7, 1e-14);
  const WeightedGraph kite(4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 2.5}});
  EXPECT_NEAR(single_edge_margin(kite, 3).global_margin, 2.5, 1e-12);
  EXPECT_THROW(single_edge_margin(kite, 9), InputError);
}

TEST(SingleEdgeMargin, ExactBoundary) {
  gen::Rng rng(64);
  for (int t = 0; t < 200; ++t) {
    const Index n = gen::pick(rng, 2, 8);
    const WeightedGraph g = gen::connected_graph(rng, n, 0.4, 0.5, 2.0);
    const Index k = gen::pick(rng, 0, g.edge_count() - 1);
    const double mu = single_edge_margin(g, k).global_margin;
    auto inertia_at = [&](double delta) {
      std::vector<oracle::RawEdge> raw = oracle::raw_edges(g);
      raw[k].w += delta;
      return oracle::inertia(oracle::laplacian(n, raw));
    };
    const oracle::Inertia at = inertia_at(-mu);
    EXPECT_EQ(at.zero, 2u);
    EXPECT_EQ(at.minus, 0u);
    EXPECT_GE(inertia_at(-mu * 1.001).minus, 1u);
    const oracle::Inertia inside = inertia_at(-mu * 0.999);
    EXPECT_EQ(inside.minus, 0u);
    EXPECT_EQ(inside.zero, 1u);
  }
}

TEST(WorstSingleEdge, Examples) {
  const MarginReport tri = worst_single_edge(uniform_triangle(1.0));
  ASSERT_EQ(tri.per_edge.size(), 3u);
  for (const EdgeMargin& m : tri.per_edge) EXPECT_NEAR(m.margin, 1.5, 1e-12);
  EXPECT_EQ(tri.binding_edge, Index{0});

  const MarginReport path = worst_single_edge(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  EXPECT_NEAR(path.per_edge[0].margin, 1.0, 1e-12);
  EXPECT_NEAR(path.per_edge[1].margin, 1.0, 1e-12);

  const MarginReport star = worst_single_edge(WeightedGraph(4, {{0, 1, 2.0}, {0, 2, 1.0}, {0, 3, 3.0}}));
  EXPECT_EQ(star.binding_edge, Index{1});
  EXPECT_NEAR(star.global_margin, 1.0, 1e-12);
}

TEST(DisjointPathsMargin, Examples) {
  const WeightedGraph g = bowtie(2.0, 0.5);
  const MarginReport r = disjoint_paths_margin(g, UncertaintySpec{{0, 3}, 0.0});
  EXPECT_EQ(r.method, MarginMethod::disjoint_paths);
  const double m0 = 1.0 / effective_resistance(g, 0, 1);
  const double m3 = 1.0 / effective_resistance(g, 2, 3);
  EXPECT_NEAR(r.global_margin, std::min(m0, m3), 1e-12);
  EXPECT_EQ(r.binding_edge, Index(m3 < m0 ? 3 : 0));

  EXPECT_NEAR(disjoint_paths_margin(g, UncertaintySpec::single(4)).global_margin,
              single_edge_margin(g, 4).global_margin, 1e-14);

  const WeightedGraph cycle(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}, {0, 2, 1.0}});
  EXPECT_THROW(disjoint_paths_margin(cycle, UncertaintySpec{{0, 2}, 0.0}), NotApplicableError);
}

TEST(SandwichBounds, UnitTriangle) {
  const WeightedGraph tri = uniform_triangle(1.0);
  const SandwichBounds b = sandwich_bounds(tri, UncertaintySpec::all_edges(tri));
  EXPECT_NEAR(b.inv_max_weight, 1.0, 1e-14);
  EXPECT_NEAR(b.max_edge_resistance, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(b.sigma_bar_m11, 1.0, 1e-12);
  EXPECT_NEAR(b.r_total, 2.0, 1e-12);
  // The reported (max w)^{-1} sits above max R_e here, so it is not a lower bound.
  EXPECT_GT(b.inv_max_weight, b.max_edge_resistance);
}

TEST(SandwichBounds, SingleEdgeAndUniform) {
  const WeightedGraph g = bowtie(2.0, 0.5);
  const SandwichBounds b = sandwich_bounds(g, UncertaintySpec::single(1));
  EXPECT_NEAR(b.max_edge_resistance, b.sigma_bar_m11, 1e-12);
  EXPECT_NEAR(b.sigma_bar_m11, b.r_total, 1e-12);
  const WeightedGraph u = uniform_triangle(4.0);
  EXPECT_NEAR(sandwich_bounds(u, UncertaintySpec::all_edges(u)).sigma_bar_m11, 0.25, 1e-12);
}

TEST(SandwichBounds, OrderingHolds) {
  gen::Rng rng(65);
  for (int t = 0; t < 200; ++t) {
    const WeightedGraph g = gen::connected_graph(rng, gen::pick(rng, 2, 8), 0.4, 0.5, 2.0);
    const SandwichBounds b = sandwich_bounds(g, random_subset(rng, g));
    EXPECT_LE(b.max_edge_resistance, b.sigma_bar_m11 + 1e-9);
    EXPECT_LE(b.sigma_bar_m11, b.r_total + 1e-9);
  }
}

TEST(SectorCheck, ArithmeticExamples) {
  // Narrow sectors [0, 0.1] on every edge.
  const WeightedGraph tri = uniform_triangle(1.0);
  const SectorVerdict narrow =
      sector_stability_check(tri, UncertaintySpec::all_edges(tri), SectorSpec(3, Sector{0.0, 0.1}));
  EXPECT_TRUE(narrow.stable);
  EXPECT_TRUE(narrow.gain_condition);

  const WeightedGraph g = bowtie(2.0, 0.5);
  // alpha = -2 / R_uv on a single edge violates the gain condition.
  const double r = effective_resistance(g, 0, 1);
  const SectorVerdict loud = sector_stability_check(g, UncertaintySpec::single(0), {{-2.0 / r, 1.0}});
  EXPECT_FALSE(loud.stable);
  EXPECT_FALSE(loud.gain_condition);

  // Single edge w = 1, width 2: 2*1 + (4 - 4 - 1) = 1.
  const WeightedGraph unit(2, {{0, 1, 1.0}});
  const SectorVerdict wide = sector_stability_check(unit, UncertaintySpec::single(0), {{-0.5, 1.5}});
  EXPECT_TRUE(wide.stable);
  EXPECT_NEAR(wide.quadratic_min, 1.0, 1e-14);

  // w = 0.4, width 2: 0.8 - 1 < 0.
  const WeightedGraph light(2, {{0, 1, 0.4}});
  const SectorVerdict fails = sector_stability_check(light, UncertaintySpec::single(0), {{-0.1, 1.9}});
  EXPECT_TRUE(fails.gain_condition);
  EXPECT_FALSE(fails.quadratic_condition);
  EXPECT_NEAR(fails.quadratic_min, -0.2, 1e-14);
  EXPECT_FALSE(fails.stable);
}

TEST(SectorCheck, FormDisagreementIsNoted) {
  // Width 3: statement form 2 + (9 - 6 - 1) = 4, other form 2 + (-9 + 6 - 1) = -2.
  const WeightedGraph unit(2, {{0, 1, 1.0}});
  const SectorVerdict v = sector_stability_check(unit, UncertaintySpec::single(0), {{-0.5, 2.5}});
  EXPECT_TRUE(v.quadratic_condition);
  EXPECT_TRUE(v.forms_disagree);
  EXPECT_FALSE(v.note.empty());
  EXPECT_NEAR(v.proof_form_min, -2.0, 1e-14);
}

TEST(SectorCheck, Validation) {
  const WeightedGraph unit(2, {{0, 1, 1.0}});
  EXPECT_THROW(sector_stability_check(unit, UncertaintySpec::single(0), {}), InputError);
  EXPECT_THROW(sector_stability_check(unit, UncertaintySpec::single(0), {{1.0, 0.5}}), InputError);
  EXPECT_THROW(sector_stability_check(unit, UncertaintySpec::single(0), {{NAN, 0.5}}), InputError);
}

TEST(SingleEdgeSectorCheck, Examples) {
  const WeightedGraph tri = uniform_triangle(1.0);
  EXPECT_TRUE(single_edge_sector_check(tri, 0, -1.0, 1.0));
  EXPECT_FALSE(single_edge_sector_check(tri, 0, -1.6, 1.0));
  const WeightedGraph light(3, {{0, 1, 0.4}, {1, 2, 1.0}, {0, 2, 1.0}});
  EXPECT_FALSE(single_edge_sector_check(light, 0, -0.5, 1.5));
  // Only a sector width above 1 + sqrt(0.2) clears the quadratic term at w = 0.4.
  EXPECT_FALSE(single_edge_sector_check(light, 0, -0.5, 0.5));
  EXPECT_TRUE(single_edge_sector_check(light, 0, -0.5, 1.7));
}

TEST(SingleEdgeSectorCheck, AgreesWithGeneralCheck) {
  gen::Rng rng(66);
  for (int t = 0; t < 200; ++t) {
    const WeightedGraph g = gen::connected_graph(rng, gen::pick(rng, 2, 7), 0.4, 0.3, 2.0);
    const Index k = gen::pick(rng, 0, g.edge_count() - 1);
    const double a = gen::uniform(rng, -3, 1);
    const double b = a + gen::uniform(rng, 0.1, 3.5);
    const bool single = single_edge_sector_check(g, k, a, b);
    const SectorVerdict general = sector_stability_check(g, UncertaintySpec::single(k), {{a, b}});
    EXPECT_EQ(single, general.stable) << "edge " << k << " sector " << a << "," << b;
  }
}
