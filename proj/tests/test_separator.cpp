#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "effres/separator_tree.hpp"

using namespace effres;

namespace {

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

std::size_t largest_part(const WeightedGraph& g, const std::vector<Vertex>& removed) {
  DisjointSets ds(g.vertex_count());
  auto gone = [&](Vertex v) { return std::binary_search(removed.begin(), removed.end(), v); };
  for (const Edge& e : g.edges()) {
    if (!gone(e.u) && !gone(e.v)) ds.unite(e.u, e.v);
  }
  std::vector<std::size_t> count(g.vertex_count(), 0);
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!gone(v)) best = std::max(best, ++count[ds.find(v)]);
  }
  return best;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("4x4 grid, grid strategy: a middle line") {
  const WeightedGraph g = gen::grid(4, 4);
  const auto s = find_separator(g, SeparatorStrategy::grid(4));
  CHECK(s.size() == 4);
  const bool row = std::all_of(s.begin(), s.end(), [&](Vertex v) { return v / 4 == s[0] / 4; });
  const bool col = std::all_of(s.begin(), s.end(), [&](Vertex v) { return v % 4 == s[0] % 4; });
  CHECK((row || col));
  const std::size_t line = row ? s[0] / 4 : s[0] % 4;
  CHECK((line == 1 || line == 2));
  CHECK(largest_part(g, s) <= 12);
}

TEST_CASE("path and star") {
  for (SeparatorStrategy st : {SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
    const auto p = find_separator(gen::path(9), st);
    CHECK(p == std::vector<Vertex>{4});
    CHECK(find_separator(gen::star(10), st) == std::vector<Vertex>{0});
  }
  const auto even = find_separator(gen::path(10), SeparatorStrategy::bfs());
  REQUIRE(even.size() == 1);
  CHECK((even[0] == 4 || even[0] == 5));
}

TEST_CASE("every strategy returns a balanced separator within budget") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WeightedGraph g = gen::planar_like(12, 15, seed);
    for (SeparatorStrategy st : {SeparatorStrategy::grid(15), SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
      const auto s = find_separator(g, st);
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(static_cast<double>(s.size()) <= st.beta * std::sqrt(180.0));
      CHECK(static_cast<double>(largest_part(g, s)) <= st.alpha * 180.0);
      const auto v = all_vertices(180);
      CHECK(is_balanced_separator(v, g.edges(), s, st.alpha));
    }
  }
}

TEST_CASE("disconnected balanced input needs no separator") {
  WeightedGraph g(6);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(3, 4, 1);
  g.add_edge(4, 5, 1);
  CHECK(find_separator(g, SeparatorStrategy::bfs()).empty());
}

TEST_CASE("dense graphs have no small separator") {
  for (SeparatorStrategy st : {SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
    st.beta = 1.0;
    CHECK(code_of([&] { find_separator(gen::complete(36), st); }) == ErrorCode::NoBalancedSeparator);
  }
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("grid") == SeparatorStrategy::Kind::Grid);
  CHECK(parse_strategy("bfs") == SeparatorStrategy::Kind::BfsLevel);
  CHECK(parse_strategy("spectral") == SeparatorStrategy::Kind::Spectral);
  CHECK(to_string(SeparatorStrategy::Kind::Spectral) == "spectral");
  CHECK_THROWS_AS(parse_strategy("metis"), Error);
}

TEST_CASE("single edge: the root is a leaf") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0);
  const std::vector<Vertex> k{0, 1};
  const SeparatorTree t = SeparatorTree::build(g, k);
  CHECK(t.nodes().size() == 1);
  CHECK(t.node(0).is_leaf());
  CHECK(t.node(0).boundary == k);
  CHECK(t.node(0).edges.size() == 1);
  CHECK(validate(t).empty());
}

TEST_CASE("8x8 grid tree") {
  for (SeparatorStrategy st : {SeparatorStrategy::grid(8), SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
    TreeBuildOptions o;
    o.strategy = st;
    const SeparatorTree t = SeparatorTree::build(gen::grid(8, 8), {}, o);
    const auto v = validate(t);
    for (const Violation& x : v) MESSAGE(describe(x));
    CHECK(v.empty());
    CHECK(static_cast<double>(t.height()) <= 3 * 6);
    for (const TreeNode& h : t.nodes()) CHECK(h.boundary.size() <= 32);
    CHECK(t.live_edge_count() == 112);
  }
}

TEST_CASE("path of 64 with leaf floor 8") {
  TreeBuildOptions o;
  o.leaf_floor = 8;
  const SeparatorTree t = SeparatorTree::build(gen::path(64), {}, o);
  CHECK(t.leaf_edge_limit() == 8);
  std::size_t stored = 0;
  for (const TreeNode& h : t.nodes()) {
    if (h.is_leaf()) CHECK(h.edges.size() <= 8);
    stored += h.edges.size() + h.extra.size();
  }
  CHECK(stored == 63);
  CHECK(validate(t).empty());
}

TEST_CASE("terminals sit in the root separator and boundary") {
  const std::vector<Vertex> k{0, 17, 63};
  const SeparatorTree t = SeparatorTree::build(gen::grid(8, 8), k);
  for (Vertex v : k) {
    CHECK(std::binary_search(t.node(0).separator.begin(), t.node(0).separator.end(), v));
    CHECK(t.node(0).in_boundary(v));
  }
  CHECK(t.node(0).boundary == t.node(0).separator);
}

TEST_CASE("construction is deterministic") {
  const WeightedGraph g = gen::planar_like(20, 20, 3);
  for (SeparatorStrategy st : {SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
    TreeBuildOptions o;
    o.strategy = st;
    CHECK(SeparatorTree::build(g, {}, o) == SeparatorTree::build(g, {}, o));
  }
}

TEST_CASE("trees on planar-like graphs and paths validate") {
  for (SeparatorStrategy st : {SeparatorStrategy::grid(30), SeparatorStrategy::bfs(), SeparatorStrategy::spectral()}) {
    TreeBuildOptions o;
    o.strategy = st;
    const SeparatorTree t = SeparatorTree::build(gen::planar_like(30, 30, 5), {}, o);
    const auto v = validate(t);
    for (const Violation& x : v) MESSAGE(describe(x));
    CHECK(v.empty());
    CHECK(t.current_graph() == gen::planar_like(30, 30, 5));
  }
  const SeparatorTree p = SeparatorTree::build(gen::path(500), {});
  CHECK(validate(p).empty());
}

TEST_CASE("tree lookups") {
  const SeparatorTree t = SeparatorTree::build(gen::grid(10, 10), {});
  for (Vertex v = 0; v < 100; ++v) {
    const NodeId leaf = t.leaf_of(v);
    CHECK(t.node(leaf).is_leaf());
    CHECK(t.node(leaf).contains(v));
    const auto path = t.path_to(leaf);
    CHECK(path.front() == t.root());
    CHECK(path.back() == leaf);
    CHECK(path.size() == t.node(leaf).depth + 1);
  }
  const TreeNode& root = t.node(0);
  REQUIRE_FALSE(root.is_leaf());
  const NodeId c = t.child_containing(0, root.vertices.front());
  CHECK(c != kNoNode);
  const auto sub = t.subtree_edges(0);
  CHECK(sub.size() == t.live_edge_count());
  CHECK(t.node_graph(0).terminals == root.boundary);
  CHECK_THROWS_AS(t.find_live_edge(0, 99), Error);
}

TEST_CASE("planted faults are reported once each") {
  SeparatorTree t = SeparatorTree::build(gen::grid(8, 8), {});
  REQUIRE(validate(t).empty());

  SUBCASE("an edge listed in two leaves") {
    std::vector<NodeId> leaves;
    for (const TreeNode& h : t.nodes()) {
      if (h.is_leaf() && !h.edges.empty()) leaves.push_back(h.id);
    }
    REQUIRE(leaves.size() >= 2);
    const EdgeId e = t.node(leaves[0]).edges.front();
    auto& list = t.node(leaves[1]).edges;
    list.insert(std::upper_bound(list.begin(), list.end(), e), e);
    const bool planted = true;
    REQUIRE(planted);
    const auto v = validate(t);
    REQUIRE(v.size() == 1);
    CHECK(v[0].property == 8);
  }

  SUBCASE("a leaf boundary broken") {
    bool planted = false;
    for (const TreeNode& h : t.nodes()) {
      if (!h.is_leaf()) continue;
      auto missing = std::find_if(h.vertices.begin(), h.vertices.end(), [&](Vertex x) { return !h.in_boundary(x); });
      if (missing != h.vertices.end()) {
        t.add_boundary_vertex(h.id, *missing);
        planted = true;
        break;
      }
    }
    REQUIRE(planted);
    const auto v = validate(t);
    REQUIRE(v.size() == 1);
    CHECK(v[0].property == 3);
    CHECK_FALSE(describe(v[0]).empty());
  }
}
