#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "effres/graph.hpp"
#include "effres/rational.hpp"

namespace effres {

enum class ReductionMode { Separable, General };
std::string to_string(ReductionMode mode);
/// "separable" | "general"; throws InvalidArgument.
ReductionMode parse_mode(const std::string& name);

/// A uMv instance: n0 x n0 boolean matrix (row-major) and two n0-vectors.
struct UmvInstance {
  std::size_t n0 = 0;
  std::vector<std::uint8_t> m;
  std::vector<std::uint8_t> u;
  std::vector<std::uint8_t> v;

  bool answer() const;
  /// Instance number `index` in the order used by exhaustive enumeration:
  /// bits of M (row-major) lowest, then u, then v.
  static UmvInstance from_index(std::size_t n0, std::uint64_t index);
  static std::uint64_t count(std::size_t n0);
  std::string to_string() const;
};

struct RationalEdge {
  Vertex u = 0;
  Vertex v = 0;
  mpq_class w;
};

struct ScriptOp {
  bool insert = true;
  RationalEdge edge;
};

/// Final gadget graph for one uMv instance, plus the incremental script that
/// produces it from the preprocessed graph.
struct ReductionInstance {
  ReductionMode mode = ReductionMode::Separable;
  UmvInstance umv;
  std::size_t n = 0;             // instance size parameter n
  std::size_t vertex_count = 0;  // vertices actually created
  mpz_class kappa;
  std::size_t y = 0;
  std::vector<std::size_t> counter;  // c(x) per vertex
  Vertex s = 0;
  Vertex t = 0;
  std::vector<std::string> names;
  std::vector<RationalEdge> initial;  // graph built from M alone
  std::vector<ScriptOp> script;       // updates once u and v arrive
  std::vector<RationalEdge> edges;    // final graph

  /// Vertices of the graph H = G minus s (all but the last vertex).
  std::size_t h_order() const { return vertex_count - 1; }
  /// 0/1 adjacency of H, row-major h_order() x h_order().
  std::vector<std::uint8_t> h_adjacency() const;
  WeightedGraph to_weighted_graph() const;
};

/// Vertex layout, separable: a_ij, b_ij, u_i, v_j, t, s; general: r_i, c_j, t, s.
/// Throws WeightUnderflow if a prescribed weight is not positive.
ReductionInstance build_gadget(ReductionMode mode, const UmvInstance& umv);

/// Decremental variant: start with t attached to every row/column vertex and
/// s-weights set for that state; zero bits delete edges at t and raise the
/// s-weights (delete + insert).
struct DecrementalScript {
  std::vector<RationalEdge> initial;
  std::vector<ScriptOp> script;
};
DecrementalScript decremental_script(const ReductionInstance& inst);
/// Applies a script to an edge list; deletes remove one matching copy
/// (any orientation) and throw NoSuchEdge if absent.
std::vector<RationalEdge> apply_script(std::vector<RationalEdge> edges, const std::vector<ScriptOp>& script);
/// Sorted (min endpoint, max endpoint, weight) multiset.
std::vector<RationalEdge> canonical(std::vector<RationalEdge> edges);

struct BdiagResult {
  mpq_class value;                  // (B^{-1})_tt
  std::array<mpz_class, 6> walks;   // (A^i)_tt for i = 0..5
};
/// B = kappa I - A for a 0/1 adjacency matrix of order `order`.
BdiagResult bdiag(const std::vector<std::uint8_t>& adjacency, std::size_t order, std::size_t t,
                  const mpz_class& kappa);

/// Decision threshold on lambda: separable 1/k + Y/k^3 + Y(n0+Y)/k^5 + 1/k^6,
/// general 1/k + Y/k^3 + 1/k^4 (k = kappa).
mpq_class threshold(ReductionMode mode, std::size_t y, const mpz_class& kappa, std::size_t n0);
/// Returns uMv: true iff lambda >= threshold.
bool classify(ReductionMode mode, const mpq_class& lambda, std::size_t y, const mpz_class& kappa, std::size_t n0);
/// The rule "lambda <= 1/k + Y/k^3 + Y(n0+1)/k^5 - 1/k^6" (general:
/// "lambda <= 1/k + Y/k^3 - 1/k^4"), which expands kappa B^{-1} with
/// alternating signs. Kept for comparison only: it is wrong on every positive
/// instance.
mpq_class alternating_sign_threshold(ReductionMode mode, std::size_t y, const mpz_class& kappa, std::size_t n0);
bool alternating_sign_classify(ReductionMode mode, const mpq_class& lambda, std::size_t y, const mpz_class& kappa,
                               std::size_t n0);

/// Brute force: a simple 5-cycle (separable) or triangle (general) through t.
bool detect_structure(const std::vector<std::uint8_t>& adjacency, std::size_t order, std::size_t t,
                      ReductionMode mode);

/// Exact s-t effective resistance of a rational-weight graph, from the
/// Laplacian grounded at t.
mpq_class rational_effective_resistance(std::size_t n, const std::vector<RationalEdge>& edges, Vertex s, Vertex t);

struct ReductionReport {
  bool umv = false;
  bool detect = false;
  bool classified = false;
  mpq_class lambda;     // from the grounded Laplacian
  mpq_class b_inverse;  // (B^{-1})_tt
  bool identity_ok = false;  // lambda == (B^{-1})_tt exactly
  bool classify_ok = false;
  bool detect_ok = false;
  bool tail_ok = false;   // Neumann tail within its bound
  bool slack_ok = false;  // classification survives the allowed approximation
  std::size_t num_bits = 0;
  std::size_t den_bits = 0;
  bool pass() const { return identity_ok && classify_ok && detect_ok && tail_ok && slack_ok; }
  std::string counterexample;
};

struct VerifyOptions {
  /// Perturb one s-edge weight by 1/kappa^7 before computing lambda.
  bool plant_fault = false;
};
ReductionReport verify_reduction(const ReductionInstance& inst, const VerifyOptions& options = {});

struct ReplayReport {
  double psi = 0.0;
  double lambda = 0.0;
  bool within = false;  // psi within (1 +- epsilon) of lambda
  std::size_t operations = 0;  // updates plus the query
};
/// Runs the update script through a DynamicIndex and queries R(s, t) once.
ReplayReport replay_as_updates(const ReductionInstance& inst, double epsilon, std::uint64_t seed,
                               bool decremental = false);

}  // namespace effres
