#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "effres/error.hpp"
#include "effres/random.hpp"
#include "effres/reduction.hpp"
#include "effres/separator.hpp"

using namespace effres;

namespace {

Vertex named(const ReductionInstance& inst, const std::string& name) {
  const auto it = std::find(inst.names.begin(), inst.names.end(), name);
  REQUIRE(it != inst.names.end());
  return static_cast<Vertex>(it - inst.names.begin());
}

UmvInstance make(std::size_t n0, std::vector<std::uint8_t> m, std::vector<std::uint8_t> u, std::vector<std::uint8_t> v) {
  UmvInstance x;
  x.n0 = n0;
  x.m = std::move(m);
  x.u = std::move(u);
  x.v = std::move(v);
  return x;
}

mpz_class power(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

TEST_CASE("instance enumeration") {
  CHECK(UmvInstance::count(2) == 256);
  CHECK(UmvInstance::count(3) == (1u << 15));
  const UmvInstance x = UmvInstance::from_index(2, 1 + (1 << 4) + (1 << 6));
  CHECK(x.m == std::vector<std::uint8_t>{1, 0, 0, 0});
  CHECK(x.u == std::vector<std::uint8_t>{1, 0});
  CHECK(x.v == std::vector<std::uint8_t>{1, 0});
  CHECK(x.answer());
  CHECK(x.to_string() == "M=10/00 u=10 v=10");
  CHECK(parse_mode("general") == ReductionMode::General);
  CHECK(to_string(ReductionMode::Separable) == "separable");
  CHECK_THROWS_AS(parse_mode("dense"), Error);
}

TEST_CASE("n0 = 1, M = 0, u = v = 1") {
  const ReductionInstance inst = build_gadget(ReductionMode::Separable, make(1, {0}, {1}, {1}));
  CHECK(inst.vertex_count == 6);
  CHECK(inst.y == 2);
  CHECK(inst.n == 5);
  CHECK(inst.kappa == 3 * power(4, 6));
  const Vertex a = named(inst, "a11"), b = named(inst, "b11");
  for (const RationalEdge& e : inst.edges) CHECK_FALSE(((e.u == a && e.v == b) || (e.u == b && e.v == a)));
}

TEST_CASE("every vertex but s has weighted degree kappa") {
  for (ReductionMode mode : {ReductionMode::Separable, ReductionMode::General}) {
    for (std::uint64_t idx : {0u, 37u, 255u}) {
      const ReductionInstance inst = build_gadget(mode, UmvInstance::from_index(2, idx));
      std::vector<mpq_class> degree(inst.vertex_count, mpq_class(0));
      for (const RationalEdge& e : inst.edges) {
        CHECK(sgn(e.w) > 0);
        degree[e.u] += e.w;
        degree[e.v] += e.w;
      }
      for (Vertex x = 0; x < inst.vertex_count; ++x) {
        if (x != inst.s) CHECK(degree[x] == mpq_class(inst.kappa));
      }
      const UmvInstance& q = inst.umv;
      CHECK(inst.y == static_cast<std::size_t>(std::accumulate(q.u.begin(), q.u.end(), 0) +
                                               std::accumulate(q.v.begin(), q.v.end(), 0)));
    }
  }
  CHECK(build_gadget(ReductionMode::General, UmvInstance::from_index(2, 0)).kappa == 3 * power(5, 5));
}

TEST_CASE("M = 0 leaves no 5-cycle through t") {
  for (std::uint64_t uv = 0; uv < 16; ++uv) {
    const ReductionInstance inst = build_gadget(ReductionMode::Separable, UmvInstance::from_index(2, uv << 4));
    CHECK_FALSE(detect_structure(inst.h_adjacency(), inst.h_order(), inst.t, ReductionMode::Separable));
  }
}

TEST_CASE("the planted 5-cycle t u1 a11 b11 v1") {
  const ReductionInstance inst = build_gadget(ReductionMode::Separable, make(2, {1, 0, 0, 0}, {1, 0}, {1, 0}));
  const auto adj = inst.h_adjacency();
  const std::size_t k = inst.h_order();
  const Vertex cyc[] = {inst.t, named(inst, "u1"), named(inst, "a11"), named(inst, "b11"), named(inst, "v1")};
  for (std::size_t i = 0; i < 5; ++i) CHECK(adj[cyc[i] * k + cyc[(i + 1) % 5]] == 1);
  CHECK(detect_structure(adj, k, inst.t, ReductionMode::Separable));
}

TEST_CASE("bdiag on small matrices") {
  const mpz_class kappa = 1000;
  const BdiagResult iso = bdiag(std::vector<std::uint8_t>(9, 0), 3, 1, kappa);
  CHECK(iso.value == mpq_class(1, 1000));

  // star: t = 0 with three leaves
  std::vector<std::uint8_t> star(16, 0);
  for (int leaf = 1; leaf < 4; ++leaf) star[leaf] = star[leaf * 4] = 1;
  const BdiagResult s = bdiag(star, 4, 0, kappa);
  CHECK(s.walks[0] == 1);
  CHECK(s.walks[1] == 0);
  CHECK(s.walks[2] == 3);
  CHECK(s.walks[4] == 9);
  // (kI - A)^-1_tt for a star is k / (k^2 - deg)
  CHECK(s.value == mpq_class(1000, 1000 * 1000 - 3));
}

TEST_CASE("closed 4-walks at t in the separable gadget") {
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const ReductionInstance inst = build_gadget(ReductionMode::Separable, UmvInstance::from_index(2, idx));
    const BdiagResult r = bdiag(inst.h_adjacency(), inst.h_order(), inst.t, inst.kappa);
    const std::size_t y = inst.y;
    CHECK(r.walks[2] == static_cast<long>(y));
    CHECK(r.walks[4] == static_cast<long>(y * (2 + y)));
    if (y <= 1) CHECK(r.walks[4] == static_cast<long>(y * (2 + 1)));
  }
}

TEST_CASE("classification thresholds") {
  const mpz_class kappa = 3 * power(9, 6);
  CHECK_FALSE(classify(ReductionMode::Separable, mpq_class(1) / mpq_class(kappa), 0, kappa, 2));
  CHECK_FALSE(classify(ReductionMode::General, mpq_class(1) / mpq_class(kappa), 0, kappa, 2));
  const mpq_class k(kappa);
  CHECK(threshold(ReductionMode::General, 2, kappa, 2) == 1 / k + 2 / (k * k * k) + 1 / (k * k * k * k));
}

TEST_CASE("exhaustive n0 = 2, both modes") {
  for (ReductionMode mode : {ReductionMode::Separable, ReductionMode::General}) {
    std::size_t passed = 0, literal_wrong_pos = 0, literal_wrong_neg = 0, positives = 0, sign_only_wrong = 0;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
      const ReductionInstance inst = build_gadget(mode, UmvInstance::from_index(2, idx));
      const ReductionReport rep = verify_reduction(inst);
      if (rep.pass()) ++passed;
      else MESSAGE(rep.counterexample);
      CHECK(rep.lambda == rep.b_inverse);
      CHECK(rep.classified == inst.umv.answer());
      CHECK(rep.detect == inst.umv.answer());
      positives += inst.umv.answer();
      const bool literal = alternating_sign_classify(mode, rep.lambda, inst.y, inst.kappa, 2);
      if (literal != inst.umv.answer()) ++(inst.umv.answer() ? literal_wrong_pos : literal_wrong_neg);
      if (mode == ReductionMode::Separable) {
        const mpq_class k(inst.kappa);
        const mpq_class k3 = k * k * k, k5 = k3 * k * k;
        const auto y = static_cast<long>(inst.y);
        const mpq_class sign_only = 1 / k + mpq_class(y) / k3 + mpq_class(y * 3) / k5 + 1 / (k5 * k);
        if ((rep.lambda >= sign_only) != inst.umv.answer()) ++sign_only_wrong;
      }
    }
    CHECK(passed == 256);
    CHECK(positives == 95);
    CHECK(literal_wrong_pos == 95);
    CHECK(literal_wrong_neg == 0);
    if (mode == ReductionMode::Separable) CHECK(sign_only_wrong == 81);
  }
}

TEST_CASE("random n0 = 3 instances") {
  Rng rng(42);
  for (ReductionMode mode : {ReductionMode::Separable, ReductionMode::General}) {
    for (int i = 0; i < 25; ++i) {
      const ReductionInstance inst = build_gadget(mode, UmvInstance::from_index(3, rng.below(UmvInstance::count(3))));
      const ReductionReport rep = verify_reduction(inst);
      CHECK(rep.pass());
      CHECK(rep.num_bits > 0);
    }
  }
}

TEST_CASE("a 1/kappa^7 perturbation breaks the identity") {
  const ReductionInstance inst = build_gadget(ReductionMode::Separable, make(2, {1, 0, 0, 0}, {1, 0}, {1, 0}));
  VerifyOptions o;
  o.plant_fault = true;
  const ReductionReport rep = verify_reduction(inst, o);
  CHECK_FALSE(rep.identity_ok);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.counterexample.empty());
}

TEST_CASE("exact rational solves") {
  RationalMatrix b(2);
  b(0, 0) = 2;
  b(0, 1) = 1;
  b(1, 0) = 1;
  b(1, 1) = 2;
  CHECK(rational_solve(b, 0) == mpq_class(2, 3));
  CHECK(rational_solve(b, 1) == mpq_class(2, 3));
  const std::vector<mpq_class> x = rational_solve_system(b, std::vector<mpq_class>{mpq_class(1, 2), mpq_class(0)});
  CHECK(x[0] == mpq_class(1, 3));
  CHECK(x[1] == mpq_class(-1, 6));
  RationalMatrix sing(2);
  sing(0, 0) = sing(0, 1) = sing(1, 0) = sing(1, 1) = mpq_class(1, 3);
  CHECK_THROWS_AS(rational_solve(sing, 0), Error);
  CHECK(to_decimal(mpq_class(1, 3), 5) == "3.3333e-01");
  CHECK(to_decimal(mpq_class(-250), 2) == "-2.5e+02");
  CHECK(to_decimal(mpq_class(0), 3) == "0");

  const std::vector<RationalEdge> path{{0, 1, mpq_class(1)}, {1, 2, mpq_class(2)}};
  CHECK(rational_effective_resistance(3, path, 0, 2) == mpq_class(3, 2));
  const std::vector<RationalEdge> split{{0, 1, mpq_class(1)}};
  CHECK_THROWS_AS(rational_effective_resistance(3, split, 0, 2), Error);
}

TEST_CASE("decremental and incremental scripts meet") {
  for (ReductionMode mode : {ReductionMode::Separable, ReductionMode::General}) {
    for (std::uint64_t idx = 0; idx < 256; idx += 17) {
      const ReductionInstance inst = build_gadget(mode, UmvInstance::from_index(2, idx));
      const auto inc = canonical(apply_script(inst.initial, inst.script));
      const DecrementalScript dec = decremental_script(inst);
      const auto got = canonical(apply_script(dec.initial, dec.script));
      const auto want = canonical(inst.edges);
      REQUIRE(got.size() == want.size());
      REQUIRE(inc.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(got[i].u == want[i].u);
        CHECK(got[i].v == want[i].v);
        CHECK(got[i].w == want[i].w);
        CHECK(inc[i].w == want[i].w);
      }
      for (const ScriptOp& op : dec.script) {
        if (op.insert) CHECK(sgn(op.edge.w) > 0);
      }
    }
  }
  CHECK_THROWS_AS(apply_script({}, {ScriptOp{false, {0, 1, mpq_class(1)}}}), Error);
}

TEST_CASE("replaying the script through the index") {
  const ReductionInstance inst = build_gadget(ReductionMode::Separable, make(2, {1, 0, 0, 0}, {1, 0}, {1, 0}));
  const ReplayReport a = replay_as_updates(inst, 0.25, 42);
  CHECK(a.within);
  CHECK(a.operations == inst.script.size() + 1);
  CHECK(a.psi >= 0.75 * a.lambda);
  CHECK(a.psi <= 1.25 * a.lambda);
  const ReplayReport b = replay_as_updates(inst, 0.25, 42);
  CHECK(a.psi == b.psi);
  const ReplayReport d = replay_as_updates(inst, 0.25, 42, true);
  CHECK(d.within);
  const ReplayReport g = replay_as_updates(build_gadget(ReductionMode::General, inst.umv), 0.25, 42);
  CHECK(g.within);
}

TEST_CASE("the separable gadget has a balanced separator of rows, columns, s and t") {
  const ReductionInstance inst = build_gadget(ReductionMode::Separable, UmvInstance::from_index(3, 12345));
  const WeightedGraph g = inst.to_weighted_graph();
  std::vector<Vertex> all(inst.vertex_count);
  std::iota(all.begin(), all.end(), Vertex{0});
  std::vector<Vertex> sep{inst.s, inst.t};
  for (std::size_t i = 1; i <= 3; ++i) {
    sep.push_back(named(inst, "u" + std::to_string(i)));
    sep.push_back(named(inst, "v" + std::to_string(i)));
  }
  std::sort(sep.begin(), sep.end());
  CHECK(is_balanced_separator(all, g.edges(), sep, 2.0 / 3.0));
  CHECK(static_cast<double>(sep.size()) <= 4.0 * std::sqrt(static_cast<double>(inst.n)));
}
