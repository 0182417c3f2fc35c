#include "effres/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "effres/random.hpp"

namespace effres::gen {

WeightedGraph grid(std::size_t rows, std::size_t cols, double w) {
  WeightedGraph g(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) g.add_edge(v, v + 1, w);
      if (r + 1 < rows) g.add_edge(v, static_cast<Vertex>(v + cols), w);
    }
  }
  return g;
}

WeightedGraph path(std::size_t n, double w) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1), w);
  return g;
}

WeightedGraph cycle(std::size_t n, double w) {
  WeightedGraph g = path(n, w);
  if (n > 2) g.add_edge(static_cast<Vertex>(n - 1), 0, w);
  return g;
}

WeightedGraph star(std::size_t n, double w) {
  WeightedGraph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(0, static_cast<Vertex>(i), w);
  return g;
}

WeightedGraph complete(std::size_t n, double w) {
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j), w);
  }
  return g;
}

WeightedGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed, double wmin, double wmax) {
  Rng rng(seed);
  WeightedGraph g(n);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (std::size_t i = 1; i < n; ++i) {
    g.add_edge(order[i], order[rng.below(i)], rng.uniform(wmin, wmax));
  }
  if (n >= 2) {
    for (std::size_t k = 0; k < extra; ++k) {
      const auto a = static_cast<Vertex>(rng.below(n));
      auto b = static_cast<Vertex>(rng.below(n - 1));
      if (b >= a) ++b;
      g.add_edge(a, b, rng.uniform(wmin, wmax));
    }
  }
  return g;
}

WeightedGraph planar_like(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> candidates;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) candidates.push_back({v, v + 1, 1.0});
      if (r + 1 < rows) candidates.push_back({v, static_cast<Vertex>(v + cols), 1.0});
      if (r + 1 < rows && c + 1 < cols && rng.bernoulli(0.5)) {
        if (rng.bernoulli(0.5)) {
          candidates.push_back({v, static_cast<Vertex>(v + cols + 1), 1.0});
        } else {
          candidates.push_back({v + 1, static_cast<Vertex>(v + cols), 1.0});
        }
      }
    }
  }
  // keep a spanning tree surely, drop ~10% of the remaining edges
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  DisjointSets sets(rows * cols);
  std::vector<char> keep(candidates.size(), 0);
  for (std::size_t idx : order) {
    if (sets.unite(candidates[idx].u, candidates[idx].v)) keep[idx] = 1;
  }
  WeightedGraph g(rows * cols);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const bool tree = keep[i] != 0;
    const double draw = rng.uniform();
    const double w = rng.uniform(0.5, 2.0);
    if (tree || draw >= 0.1) g.add_edge(candidates[i].u, candidates[i].v, w);
  }
  return g;
}

}  // namespace effres::gen
