#include "resistnet/rgg.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "resistnet/errors.hpp"

namespace resistnet {

WeightedGraph generate_rgg(Index n, double radius, std::uint64_t seed, double side) {
  if (n < 2) throw InputError("random geometric graph needs at least 2 nodes");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("radius must be positive");
  if (!(side > 0.0) || !std::isfinite(side)) throw InputError("side must be positive");

  SplitMix64 rng(seed);
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (int attempt = 0; attempt < kRggMaxAttempts; ++attempt) {
    for (Index i = 0; i < n; ++i) {
      xs[i] = rng.uniform() * side;
      ys[i] = rng.uniform() * side;
    }
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double d = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        if (d <= radius && d > 0.0) edges.push_back({i, j, 1.0 / d});
      }
    }
    WeightedGraph g(n, edges);
    if (connected_components(g).count == 1) return g;
  }
  throw GenerationError("no connected random geometric graph after " +
                        std::to_string(kRggMaxAttempts) + " attempts (n=" + std::to_string(n) +
                        ", radius=" + std::to_string(radius) + "); try a larger radius");
}

}  // namespace resistnet
