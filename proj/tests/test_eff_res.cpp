#include <chrono>

#include "doctest.h"
#include "effres/eff_res.hpp"
#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "support.hpp"

using namespace effres;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TerminalGraph line(std::size_t k) {
  TerminalGraph g;
  for (Vertex v = 0; v < k; ++v) g.vertices.push_back(10 + v);
  for (Vertex v = 0; v + 1 < k; ++v) g.edges.push_back({10 + v, 11 + v, 1.0});
  g.terminals = g.vertices;
  return g;
}

}  // namespace

TEST_CASE("query parameters") {
  const QueryParams q;
  CHECK(q.delta() == 0.0625);
  CHECK_NOTHROW(q.validate());
  CHECK((1 + 2 * q.delta()) * (1 + q.delta_est()) <= 1 + q.epsilon);
  CHECK(index_params_for(q).delta == q.delta());
  QueryParams bad;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("estimator on small graphs") {
  CHECK(estimate_eff_res(line(2), 10, 11) == doctest::Approx(1.0));
  CHECK(estimate_eff_res(line(3), 10, 12) == doctest::Approx(2.0));
  TerminalGraph two = line(4);
  two.edges.erase(two.edges.begin() + 1);
  CHECK(code_of([&] { estimate_eff_res(two, 10, 13); }) == ErrorCode::Disconnected);
  CHECK(code_of([&] { estimate_eff_res(two, 10, 10); }) == ErrorCode::SameVertex);
  CHECK(code_of([&] { estimate_eff_res(two, 10, 3); }) == ErrorCode::UnknownVertex);
}

TEST_CASE("estimator on a grid's root cache matches the oracle on that cache") {
  const DynamicIndex index(gen::grid(12, 12), {});
  const TerminalGraph& h = index.root_asc();
  const WeightedGraph hw = h.to_weighted_graph();
  REQUIRE(h.vertices.size() >= 3);
  for (std::size_t i = 1; i < h.vertices.size(); ++i) {
    CHECK(testing::rel_err(estimate_eff_res(h, h.vertices[0], h.vertices[i]),
                           effective_resistance_exact(hw, 0, static_cast<Vertex>(i))) <= 1e-8);
  }
}

TEST_CASE("16x16 grid, adjacent interior pair") {
  const WeightedGraph g = gen::grid(16, 16);
  DynamicIndex index(g, {}, index_params_for(QueryParams{}));
  const Vertex s = 5 * 16 + 6, t = 5 * 16 + 7;
  const double psi = query(index, s, t);
  const double r = effective_resistance_exact(g, s, t);
  CHECK(psi >= 0.75 * r);
  CHECK(psi <= 1.25 * r);
}

TEST_CASE("repeated queries are identical and leave no trace") {
  DynamicIndex index(gen::planar_like(12, 12, 9), {});
  const std::string before = index.serialize();
  const double a = query(index, 13, 120);
  const double b = query(index, 13, 120);
  const double c = query(index, 13, 120);
  CHECK(a == b);
  CHECK(b == c);
  CHECK(index.serialize() == before);
  CHECK(code_of([&] { query(index, 4, 4); }) == ErrorCode::SameVertex);
  CHECK(code_of([&] { query(index, 4, 1000); }) == ErrorCode::UnknownVertex);
  CHECK(index.serialize() == before);
}

TEST_CASE("terminals need no recomputation") {
  const std::vector<Vertex> k{0, 99};
  DynamicIndex index(gen::grid(10, 10), k);
  const std::string before = index.serialize();
  index.begin_transaction();
  index.promote(0);
  index.promote(99);
  CHECK(index.last_recomputed() == 0);
  index.rollback();
  CHECK(query(index, 0, 99) == doctest::Approx(effective_resistance_exact(gen::grid(10, 10), 0, 99)).epsilon(0.25));
  CHECK(index.serialize() == before);
}

TEST_CASE("single-pair tracker follows query") {
  DynamicIndex index(gen::grid(10, 10), {});
  SinglePairTracker tracker(index, 11, 88);
  DynamicIndex shadow(gen::grid(10, 10), std::vector<Vertex>{11, 88});
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto u = static_cast<Vertex>(rng.below(100));
    const auto v = static_cast<Vertex>(rng.below(100));
    if (u == v) continue;
    tracker.insert(u, v, 1.0);
    shadow.insert(u, v, 1.0);
    CHECK(tracker.value() == query(shadow, 11, 88));
    CHECK(std::abs(tracker.value() / effective_resistance_exact(index.graph(), 11, 88) - 1) <= 0.25);
  }
}

TEST_CASE("single-pair tracker across a disconnection") {
  DynamicIndex index(gen::path(30), {});
  SinglePairTracker tracker(index, 3, 25);
  CHECK(tracker.value() == doctest::Approx(22.0).epsilon(0.25));
  tracker.erase(14, 15);
  CHECK_FALSE(tracker.connected());
  CHECK(code_of([&] { tracker.value(); }) == ErrorCode::Disconnected);
  tracker.insert(14, 15, 1.0);
  CHECK(tracker.connected());
  CHECK(tracker.value() == doctest::Approx(22.0).epsilon(0.25));

  // a lookup costs far less than an update
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  double sink = 0.0;
  for (int i = 0; i < 1000; ++i) sink += tracker.value();
  const auto t1 = clock::now();
  tracker.insert(0, 29, 1.0);
  const auto t2 = clock::now();
  CHECK(sink > 0.0);
  MESSAGE("1000 lookups " << (t1 - t0).count() << " ns, one update " << (t2 - t1).count() << " ns");
}
