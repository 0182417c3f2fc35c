#pragma once

#include <cmath>
#include <vector>

#include "effres/graph.hpp"
#include "effres/random.hpp"

namespace testing {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

inline std::vector<double> random_vector(std::size_t n, effres::Rng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

/// x^T L x straight from the edge list.
inline double energy(const effres::WeightedGraph& g, const std::vector<double>& x) {
  double e = 0.0;
  for (const effres::Edge& ed : g.edges()) e += ed.w * (x[ed.u] - x[ed.v]) * (x[ed.u] - x[ed.v]);
  return e;
}

}  // namespace testing
