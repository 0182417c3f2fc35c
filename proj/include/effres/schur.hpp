#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "effres/graph.hpp"
#include "effres/numerics.hpp"

namespace effres {

/// A graph over a subset of a global vertex id space together with a terminal
/// set K. Vertex and terminal lists are kept sorted and unique; edges use
/// global ids.
struct TerminalGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Vertex> terminals;

  /// Whole graph with the given terminals.
  static TerminalGraph from_graph(const WeightedGraph& g, std::span<const Vertex> terminals);

  /// Sorts/dedups vertex and terminal lists and checks that terminals and edge
  /// endpoints are vertices. Throws UnknownVertex.
  void normalize();

  bool has_vertex(Vertex v) const noexcept;
  bool is_terminal(Vertex v) const noexcept;
  std::vector<Vertex> non_terminals() const;
  /// Position of v in `vertices`; throws UnknownVertex.
  std::size_t local_index(Vertex v) const;

  /// Laplacian indexed by position in `vertices`.
  SymmetricMatrix laplacian() const;
  /// Compact copy with vertex i = vertices[i].
  WeightedGraph to_weighted_graph() const;

  friend bool operator==(const TerminalGraph&, const TerminalGraph&) = default;
};

/// Parallel edges merged (conductances summed), each edge stored with u < v,
/// sorted by (u, v).
std::vector<Edge> merge_parallel_edges(std::span<const Edge> edges);

/// Exact Schur complement onto the terminals, as a graph whose vertex set is
/// exactly K. Components without terminals contribute nothing. Off-diagonal
/// entries below `drop_tol` times the largest diagonal are dropped as round-off.
TerminalGraph exact_schur(const TerminalGraph& g, double drop_tol = 1e-14);

/// Weight of a terminal-free walk: product of edge weights over the product of
/// weighted degrees of interior vertices. Parallel edges count with their
/// summed conductance. Throws NotAWalk or NotTerminalFree.
double walk_weight(const TerminalGraph& g, std::span<const Vertex> walk);

/// Sum of walk weights over every terminal-free walk with at most max_len
/// edges, per terminal pair. Test oracle only: exponential in max_len.
/// Throws Budget once more than `walk_budget` walks are enumerated.
TerminalGraph schur_by_walks(const TerminalGraph& g, std::size_t max_len, std::size_t walk_budget = 10'000'000);

/// G1 (+) G2: union of edge-disjoint graphs whose shared vertices are
/// terminals in both. Edges are concatenated (G1 first). Throws
/// SharedNonTerminal.
TerminalGraph merge(const TerminalGraph& g1, const TerminalGraph& g2);

}  // namespace effres
