#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "effres/sparsifier.hpp"
#include "support.hpp"

using namespace effres;

namespace {

// x^T L(H) x / x^T L(G) x over random vectors
std::pair<double, double> sampled_ratio(const WeightedGraph& g, const WeightedGraph& h, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto x = testing::random_vector(g.vertex_count(), rng);
    const double r = testing::energy(h, x) / testing::energy(g, x);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("a single edge survives unchanged") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 2.5);
  for (double eps : {0.01, 0.25, 0.49}) {
    SparsifyParams p;
    p.epsilon = eps;
    const WeightedGraph h = spectral_sparsify(g, p);
    REQUIRE(h.edge_count() == 1);
    CHECK(h.edges()[0].w == 2.5);
  }
}

TEST_CASE("trees keep every edge") {
  SparsifyParams p;
  p.epsilon = 0.45;
  p.oversample = 0.5;
  const WeightedGraph t = gen::random_connected(50, 0, 6);
  const WeightedGraph h = spectral_sparsify(t, p);
  CHECK(h.edge_count() == 49);
  const SpectralBounds b = spectral_bounds(t, h);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));
}

TEST_CASE("K16 at eps 0.5") {
  // eps must stay below 1/2, so take the largest double under it
  SparsifyParams p;
  p.epsilon = std::nextafter(0.5, 0.0);
  p.gamma = 0.1;
  const WeightedGraph g = gen::complete(16);
  const WeightedGraph h = spectral_sparsify(g, p);
  const auto [lo, hi] = sampled_ratio(g, h, 100, 1);
  CHECK(lo >= 0.5);
  CHECK(hi <= 1.5);
}

TEST_CASE("dense graphs are really sampled and still sandwich") {
  SparsifyParams p;
  p.epsilon = 0.45;
  p.oversample = 1.0;
  p.seed = 17;
  const WeightedGraph g = gen::complete(120);
  const WeightedGraph h = spectral_sparsify(g, p);
  CHECK(h.edge_count() < g.edge_count());
  CHECK(h.edge_count() <= sparsifier_edge_budget(120, p));
  const SpectralBounds b = spectral_bounds(g, h);
  CHECK(b.lower >= 1 - p.epsilon);
  CHECK(b.upper <= 1 + p.epsilon);
  const auto [lo, hi] = sampled_ratio(g, h, 100, 2);
  CHECK(lo >= b.lower - 1e-9);
  CHECK(hi <= b.upper + 1e-9);

  CHECK(spectral_sparsify(g, p) == h);
  SparsifyParams other = p;
  other.seed = 18;
  CHECK_FALSE(spectral_sparsify(g, other) == h);
}

TEST_CASE("sparsifying an edge partition piecewise") {
  SparsifyParams p;
  p.epsilon = 0.45;
  p.gamma = 0.99;
  p.oversample = 1.0;
  const WeightedGraph g = gen::complete(200);
  WeightedGraph a(200), b(200);
  std::size_t i = 0;
  for (const Edge& e : g.edges()) (i++ % 2 ? a : b).add_edge(e.u, e.v, e.w);
  const WeightedGraph ha = spectral_sparsify(a, p);
  p.seed = 43;
  const WeightedGraph hb = spectral_sparsify(b, p);
  CHECK(ha.edge_count() < a.edge_count());
  WeightedGraph h(200);
  for (const Edge& e : ha.edges()) h.add_edge(e.u, e.v, e.w);
  for (const Edge& e : hb.edges()) h.add_edge(e.u, e.v, e.w);
  const SpectralBounds bounds = spectral_bounds(g, h);
  CHECK(bounds.lower >= 1 - p.epsilon);
  CHECK(bounds.upper <= 1 + p.epsilon);
}

TEST_CASE("approx_schur of a path onto its ends") {
  SparsifyParams p;
  p.epsilon = 0.1;
  const TerminalGraph h = approx_schur(TerminalGraph::from_graph(gen::path(3), std::vector<Vertex>{0, 2}), p);
  REQUIRE(h.edges.size() == 1);
  CHECK(h.edges[0].w >= 0.45);
  CHECK(h.edges[0].w <= 0.55);
}

TEST_CASE("approx_schur with K = V sparsifies the graph itself") {
  const WeightedGraph g = gen::random_connected(30, 60, 8);
  std::vector<Vertex> all(30);
  std::iota(all.begin(), all.end(), Vertex{0});
  const TerminalGraph h = approx_schur(TerminalGraph::from_graph(g, all), SparsifyParams{});
  const SpectralBounds b = spectral_bounds(g, h.to_weighted_graph());
  CHECK(b.lower >= 0.75);
  CHECK(b.upper <= 1.25);
}

TEST_CASE("grid side terminals keep resistances") {
  const WeightedGraph g = gen::grid(8, 8);
  std::vector<Vertex> k(8);
  std::iota(k.begin(), k.end(), Vertex{0});
  SparsifyParams p;
  const TerminalGraph h = approx_schur(TerminalGraph::from_graph(g, k), p);
  CHECK(h.edges.size() <= sparsifier_edge_budget(8, p));
  const WeightedGraph hw = h.to_weighted_graph();
  int pairs = 0;
  for (Vertex a = 0; a < 8; ++a) {
    for (Vertex b = a + 1; b < 8; ++b) {
      const double want = effective_resistance_exact(g, a, b);
      const double got = effective_resistance_exact(hw, a, b);
      CHECK(got >= want / 1.25);
      CHECK(got <= want / 0.75);
      ++pairs;
    }
  }
  CHECK(pairs == 28);
}

TEST_CASE("parameter validation") {
  SparsifyParams p;
  p.epsilon = 0.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.epsilon = 0.25;
  p.gamma = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.gamma = 0.1;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 0.5;
  CHECK_THROWS_AS(spectral_sparsify(gen::path(4), p), Error);
  CHECK(sparsifier_edge_budget(100, SparsifyParams{}) ==
        static_cast<std::size_t>(std::ceil(4.0 * 100 * 16 * std::log(1000.0))));
}

TEST_CASE("spectral_bounds sees scaling and ignores the kernel") {
  const WeightedGraph g = gen::planar_like(5, 5, 1);
  CHECK(spectral_bounds(g, g).lower == doctest::Approx(1.0));
  WeightedGraph twice(25);
  for (const Edge& e : g.edges()) twice.add_edge(e.u, e.v, 2 * e.w);
  const SpectralBounds b = spectral_bounds(g, twice);
  CHECK(b.lower == doctest::Approx(2.0));
  CHECK(b.upper == doctest::Approx(2.0));
}
