#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "effres/numerics.hpp"

namespace effres {

using Vertex = std::uint32_t;

/// Undirected edge with positive conductance w (resistance 1/w).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted multigraph over dense vertex ids 0..n-1. Edges keep
/// insertion order; parallel edges are separate entries.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : degree_(n, 0.0) {}
  WeightedGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  double degree(Vertex v) const { return degree_.at(v); }

  /// Throws UnknownVertex, NonPositiveWeight, or InvalidArgument for self-loops.
  void add_edge(Vertex u, Vertex v, double w);
  /// Removes the most recently inserted copy of (u,v). Throws NoSuchEdge.
  void remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Recomputes every weighted degree and compares with the cache.
  bool degrees_consistent(double rel_tol = 1e-12) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<Edge> edges_;
  std::vector<double> degree_;
};

/// Dense real vector indexed by vertex; used for demands and potentials.
class DemandVector {
 public:
  explicit DemandVector(std::size_t n) : values_(n, 0.0) {}

  static DemandVector indicator(std::size_t n, Vertex u);
  /// chi_{s,t} = 1_s - 1_t
  static DemandVector pair(std::size_t n, Vertex s, Vertex t);

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double sum() const noexcept;

 private:
  std::vector<double> values_;
};

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x) noexcept;
  bool unite(std::size_t a, std::size_t b) noexcept;
  bool same(std::size_t a, std::size_t b) noexcept { return find(a) == find(b); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Component label per vertex (labels are 0..c-1 in order of first appearance).
std::vector<std::size_t> connected_components(const WeightedGraph& g);

/// L = D - A, parallel edges merged by summing conductances.
SymmetricMatrix laplacian(const WeightedGraph& g);

/// chi^T L^+ chi via the dense pseudo-inverse. Throws SameVertex, Disconnected,
/// UnknownVertex.
double effective_resistance_exact(const WeightedGraph& g, Vertex s, Vertex t);

/// Energy sum_e r(e) f(e)^2 of the unit s-t electrical flow, with f taken from
/// the potentials phi = L^+ chi.
double electrical_flow_energy(const WeightedGraph& g, Vertex s, Vertex t);

/// Exact resistance oracle for many queries on one graph: each component's
/// Laplacian is grounded at its first vertex and factored once by sparse
/// LDL^T; a pair query is then two triangular solves.
class ResistanceOracle {
 public:
  explicit ResistanceOracle(const WeightedGraph& g);
  double resistance(Vertex s, Vertex t) const;

 private:
  struct Block {
    std::vector<Vertex> vertices;  // vertices[0] is the ground
    std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> factor;
  };
  std::size_t n_ = 0;
  std::vector<std::size_t> component_;
  std::vector<std::size_t> local_;
  std::vector<Block> blocks_;
};

struct Update {
  enum class Kind { Insert, Delete };
  Kind kind = Kind::Insert;
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;

  static Update insert(Vertex u, Vertex v, double w) { return {Kind::Insert, u, v, w}; }
  static Update remove(Vertex u, Vertex v) { return {Kind::Delete, u, v, 0.0}; }
};

WeightedGraph apply_update(WeightedGraph g, const Update& op);

/// Text format: header "n m", then m lines "u v w".
WeightedGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const WeightedGraph& g);

}  // namespace effres
