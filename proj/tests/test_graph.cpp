#include <sstream>

#include "doctest.h"
#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "effres/graph.hpp"
#include "support.hpp"

using namespace effres;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no Error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("closed-form resistances") {
  CHECK(effective_resistance_exact(gen::complete(4), 0, 3) == doctest::Approx(0.5));
  CHECK(effective_resistance_exact(gen::path(10), 0, 9) == doctest::Approx(9.0));
  CHECK(effective_resistance_exact(gen::path(10, 2.0), 2, 5) == doctest::Approx(1.5));
  for (std::size_t k = 1; k < 12; ++k) {
    CHECK(effective_resistance_exact(gen::cycle(12), 0, static_cast<Vertex>(k)) ==
          doctest::Approx(static_cast<double>(k * (12 - k)) / 12.0));
  }
  CHECK(effective_resistance_exact(gen::star(7), 2, 5) == doctest::Approx(2.0));
}

TEST_CASE("parallel edges combine as conductances") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 0, 3.0);
  CHECK(effective_resistance_exact(g, 0, 1) == doctest::Approx(0.25));
  CHECK(laplacian(g)(1, 0) == -4.0);
}

TEST_CASE("electrical flow energy equals effective resistance") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const WeightedGraph g = gen::random_connected(40, 60, seed);
    const double r = effective_resistance_exact(g, 3, 31);
    CHECK(testing::rel_err(electrical_flow_energy(g, 3, 31), r) <= 1e-9);
  }
}

TEST_CASE("resistance oracle agrees with the pseudo-inverse") {
  const WeightedGraph g = gen::planar_like(9, 11, 4);
  const ResistanceOracle oracle(g);
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    const auto s = static_cast<Vertex>(rng.below(99));
    const auto t = static_cast<Vertex>(rng.below(99));
    if (s == t) continue;
    CHECK(testing::rel_err(oracle.resistance(s, t), effective_resistance_exact(g, s, t)) <= 1e-9);
  }
}

TEST_CASE("resistance errors") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  CHECK(code_of([&] { effective_resistance_exact(g, 1, 1); }) == ErrorCode::SameVertex);
  CHECK(code_of([&] { effective_resistance_exact(g, 0, 2); }) == ErrorCode::Disconnected);
  CHECK(code_of([&] { effective_resistance_exact(g, 0, 9); }) == ErrorCode::UnknownVertex);
  const ResistanceOracle oracle(g);
  CHECK(oracle.resistance(2, 3) == doctest::Approx(1.0));
  CHECK(code_of([&] { oracle.resistance(1, 3); }) == ErrorCode::Disconnected);
  CHECK(code_of([&] { oracle.resistance(3, 3); }) == ErrorCode::SameVertex);
}

TEST_CASE("edge updates keep degrees consistent") {
  WeightedGraph g(3);
  CHECK(code_of([&] { g.add_edge(0, 1, 0.0); }) == ErrorCode::NonPositiveWeight);
  CHECK(code_of([&] { g.add_edge(0, 3, 1.0); }) == ErrorCode::UnknownVertex);
  CHECK(code_of([&] { g.add_edge(1, 1, 1.0); }) == ErrorCode::InvalidArgument);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 0.5);
  g.add_edge(0, 1, 1.0);
  CHECK(g.degree(1) == doctest::Approx(3.5));
  g.remove_edge(1, 0);
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0].w == 2.0);  // the latest copy went
  CHECK(g.degrees_consistent());
  CHECK(code_of([&] { g.remove_edge(0, 2); }) == ErrorCode::NoSuchEdge);
  const WeightedGraph h = apply_update(g, Update::remove(2, 1));
  CHECK_FALSE(h.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK(connected_components(h) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("graph text format round-trips") {
  const WeightedGraph g = gen::random_connected(15, 10, 2);
  std::stringstream ss;
  write_graph(ss, g);
  const WeightedGraph back = read_graph(ss);
  CHECK(back == g);
}

TEST_CASE("parse errors name the line") {
  std::istringstream in("# comment\n3 2\n0 1 1.0\n0 7 1.0\n");
  try {
    read_graph(in);
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  std::istringstream short_in("3 2\n0 1 1\n");
  CHECK_THROWS_AS(read_graph(short_in), Error);
}

TEST_CASE("demand vectors and disjoint sets") {
  const DemandVector d = DemandVector::pair(4, 1, 3);
  CHECK(d.values()[1] == 1.0);
  CHECK(d.values()[3] == -1.0);
  CHECK(d.sum() == 0.0);
  DisjointSets ds(5);
  CHECK(ds.unite(0, 4));
  CHECK_FALSE(ds.unite(4, 0));
  CHECK(ds.same(0, 4));
  CHECK_FALSE(ds.same(0, 1));
}
