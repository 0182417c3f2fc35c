#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "effres/graph.hpp"

namespace effres {

struct SeparatorStrategy {
  enum class Kind { Grid, BfsLevel, Spectral };
  Kind kind = Kind::BfsLevel;
  double alpha = 2.0 / 3.0;  // largest remaining component <= alpha * |V|
  double beta = 4.0;         // |S| <= beta * sqrt(|V|)
  /// Grid strategy only: vertex v sits at (v / grid_cols, v % grid_cols).
  /// 0 means ceil(sqrt(max id + 1)), i.e. a square grid.
  std::size_t grid_cols = 0;

  static SeparatorStrategy grid(std::size_t cols = 0) { return {Kind::Grid, 2.0 / 3.0, 4.0, cols}; }
  static SeparatorStrategy bfs() { return {Kind::BfsLevel, 2.0 / 3.0, 4.0, 0}; }
  static SeparatorStrategy spectral() { return {Kind::Spectral, 2.0 / 3.0, 4.0, 0}; }
};

/// "grid" | "bfs" | "spectral"; throws InvalidArgument otherwise.
SeparatorStrategy::Kind parse_strategy(const std::string& name);
std::string to_string(SeparatorStrategy::Kind kind);

/// True when every component of the subgraph minus `removed` has at most
/// alpha * |vertices| vertices, or the whole remainder does.
bool is_balanced_separator(std::span<const Vertex> vertices, std::span<const Edge> edges,
                           std::span<const Vertex> removed, double alpha);

/// Balanced separator of the subgraph induced by `edges` on `vertices`
/// (sorted, unique, global ids). Returns a sorted vertex set. An already
/// balanced disconnected input yields the empty set.
/// Throws NoBalancedSeparator when no candidate meets alpha and beta.
std::vector<Vertex> find_separator(std::span<const Vertex> vertices, std::span<const Edge> edges,
                                   const SeparatorStrategy& strategy);
std::vector<Vertex> find_separator(const WeightedGraph& g, const SeparatorStrategy& strategy);

}  // namespace effres
