#pragma once

#include <cstddef>
#include <cstdint>

#include "effres/graph.hpp"

namespace effres::gen {

/// rows x cols grid, vertex id r*cols + c.
WeightedGraph grid(std::size_t rows, std::size_t cols, double w = 1.0);
WeightedGraph path(std::size_t n, double w = 1.0);
WeightedGraph cycle(std::size_t n, double w = 1.0);
/// Center is vertex 0.
WeightedGraph star(std::size_t n, double w = 1.0);
WeightedGraph complete(std::size_t n, double w = 1.0);

/// Random spanning tree plus `extra` random edges, weights in [wmin, wmax].
WeightedGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed, double wmin = 0.5,
                               double wmax = 2.0);

/// Planar triangulated grid: each cell gets one random diagonal with
/// probability 1/2, about 10% of non-tree edges are dropped, weights random
/// in [0.5, 2]. Connected; vertex ids as in grid().
WeightedGraph planar_like(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace effres::gen
