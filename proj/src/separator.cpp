#include "effres/separator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include <Eigen/Dense>

#include "effres/error.hpp"

namespace effres {

SeparatorStrategy::Kind parse_strategy(const std::string& name) {
  if (name == "grid") return SeparatorStrategy::Kind::Grid;
  if (name == "bfs") return SeparatorStrategy::Kind::BfsLevel;
  if (name == "spectral") return SeparatorStrategy::Kind::Spectral;
  throw Error(ErrorCode::InvalidArgument, "unknown separator strategy '" + name + "'");
}

std::string to_string(SeparatorStrategy::Kind kind) {
  switch (kind) {
    case SeparatorStrategy::Kind::Grid: return "grid";
    case SeparatorStrategy::Kind::BfsLevel: return "bfs";
    case SeparatorStrategy::Kind::Spectral: return "spectral";
  }
  return "?";
}

namespace {

// compact adjacency over local ids 0..n-1
struct Local {
  std::span<const Vertex> ids;
  std::vector<std::size_t> start;
  std::vector<std::size_t> adj;
  std::vector<double> weight;

  std::size_t size() const { return ids.size(); }

  Local(std::span<const Vertex> vertices, std::span<const Edge> edges) : ids(vertices) {
    const std::size_t n = vertices.size();
    auto local = [&](Vertex v) {
      auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
      if (it == vertices.end() || *it != v) throw Error(ErrorCode::UnknownVertex, "edge endpoint outside the vertex set");
      return static_cast<std::size_t>(it - vertices.begin());
    };
    std::vector<std::size_t> deg(n + 1, 0);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    ends.reserve(edges.size());
    for (const Edge& e : edges) {
      ends.emplace_back(local(e.u), local(e.v));
      ++deg[ends.back().first];
      ++deg[ends.back().second];
    }
    start.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + deg[i];
    adj.resize(start[n]);
    weight.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto [a, b] = ends[k];
      adj[fill[a]] = b;
      weight[fill[a]++] = edges[k].w;
      adj[fill[b]] = a;
      weight[fill[b]++] = edges[k].w;
    }
  }
};

// sizes of the components of local minus `removed`
std::vector<std::size_t> component_sizes(const Local& g, const std::vector<char>& removed) {
  std::vector<char> seen(removed);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.assign(1, s);
    std::size_t count = 0;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      ++count;
      for (std::size_t k = g.start[x]; k < g.start[x + 1]; ++k) {
        if (!seen[g.adj[k]]) {
          seen[g.adj[k]] = 1;
          stack.push_back(g.adj[k]);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

// largest component size after removal, or 0 when the remainder as a whole is
// small enough; SIZE_MAX when unbalanced
std::size_t imbalance(const Local& g, const std::vector<char>& removed, double alpha) {
  const double limit = alpha * static_cast<double>(g.size());
  const auto sizes = component_sizes(g, removed);
  const std::size_t rest = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  const std::size_t largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  if (static_cast<double>(largest) <= limit) return largest;
  if (static_cast<double>(rest) <= limit) return rest;
  return SIZE_MAX;
}

struct Candidate {
  std::vector<std::size_t> members;
  std::size_t balance = SIZE_MAX;
};

// keeps the smaller candidate, then the better balanced one
void consider(const Local& g, std::vector<std::size_t> members, double alpha, Candidate& best) {
  if (!best.members.empty() && members.size() > best.members.size()) return;
  std::vector<char> removed(g.size(), 0);
  for (std::size_t x : members) removed[x] = 1;
  const std::size_t bal = imbalance(g, removed, alpha);
  if (bal == SIZE_MAX) return;
  if (best.balance == SIZE_MAX || members.size() < best.members.size() ||
      (members.size() == best.members.size() && bal < best.balance)) {
    best.members = std::move(members);
    best.balance = bal;
  }
}

std::vector<std::size_t> bfs_order(const Local& g, std::size_t source, std::vector<std::size_t>& dist) {
  dist.assign(g.size(), SIZE_MAX);
  std::vector<std::size_t> order{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t x = order[head];
    for (std::size_t k = g.start[x]; k < g.start[x + 1]; ++k) {
      if (dist[g.adj[k]] == SIZE_MAX) {
        dist[g.adj[k]] = dist[x] + 1;
        order.push_back(g.adj[k]);
      }
    }
  }
  return order;
}

// vertices of the largest component (smallest local id breaks ties)
std::vector<std::size_t> largest_component(const Local& g) {
  std::vector<std::size_t> best;
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> dist;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    auto comp = bfs_order(g, s, dist);
    for (std::size_t x : comp) seen[x] = 1;
    if (comp.size() > best.size()) best = std::move(comp);
  }
  std::sort(best.begin(), best.end());
  return best;
}

Candidate bfs_levels(const Local& g, double alpha) {
  const auto comp = largest_component(g);
  std::vector<std::size_t> dist;
  // pseudo-peripheral root: two sweeps
  std::size_t root = comp.front();
  for (int sweep = 0; sweep < 2; ++sweep) root = bfs_order(g, root, dist).back();
  const auto order = bfs_order(g, root, dist);
  const std::size_t depth = dist[order.back()];
  std::vector<std::vector<std::size_t>> levels(depth + 1);
  for (std::size_t x : order) levels[dist[x]].push_back(x);

  Candidate best;
  for (const auto& level : levels) consider(g, level, alpha, best);
  if (best.balance != SIZE_MAX) return best;
  const std::size_t max_window = depth <= 64 ? depth + 1 : 4;
  for (std::size_t len = 2; len <= max_window; ++len) {
    for (std::size_t i = 0; i + len <= depth + 1; ++i) {
      std::vector<std::size_t> window;
      for (std::size_t j = i; j < i + len; ++j) window.insert(window.end(), levels[j].begin(), levels[j].end());
      consider(g, std::move(window), alpha, best);
    }
    if (best.balance != SIZE_MAX) break;
  }
  return best;
}

Candidate grid_cut(const Local& g, std::size_t cols, double alpha) {
  const std::size_t n = g.size();
  std::vector<std::size_t> row(n), col(n);
  for (std::size_t i = 0; i < n; ++i) {
    row[i] = g.ids[i] / cols;
    col[i] = g.ids[i] % cols;
  }
  const auto [r0, r1] = std::minmax_element(row.begin(), row.end());
  const auto [c0, c1] = std::minmax_element(col.begin(), col.end());
  const bool rows_first = (*r1 - *r0) >= (*c1 - *c0);

  Candidate best;
  for (int pass = 0; pass < 2 && best.balance == SIZE_MAX; ++pass) {
    const auto& coord = (pass == 0) == rows_first ? row : col;
    std::vector<std::size_t> sorted(coord);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t median = sorted[n / 2];
    std::vector<std::size_t> values(sorted);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // nearest to the median first, so ties in size resolve to the median line
    std::stable_sort(values.begin(), values.end(), [&](std::size_t a, std::size_t b) {
      auto gap = [&](std::size_t x) { return x > median ? x - median : median - x; };
      return gap(a) < gap(b);
    });
    for (std::size_t value : values) {
      std::vector<std::size_t> line;
      for (std::size_t i = 0; i < n; ++i) {
        if (coord[i] == value) line.push_back(i);
      }
      Candidate trial;
      consider(g, std::move(line), alpha, trial);
      if (trial.balance != SIZE_MAX && (best.balance == SIZE_MAX || trial.members.size() < best.members.size())) {
        best = std::move(trial);
      }
    }
  }
  return best;
}

std::vector<double> fiedler_vector(const Local& g, const std::vector<std::size_t>& comp) {
  const std::size_t k = comp.size();
  std::vector<std::size_t> pos(g.size(), SIZE_MAX);
  for (std::size_t i = 0; i < k; ++i) pos[comp[i]] = i;
  if (k <= 1500) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t x = comp[i];
      for (std::size_t e = g.start[x]; e < g.start[x + 1]; ++e) {
        const auto j = static_cast<Eigen::Index>(pos[g.adj[e]]);
        lap(static_cast<Eigen::Index>(i), j) -= g.weight[e];
        lap(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += g.weight[e];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    const Eigen::VectorXd f = solver.eigenvectors().col(1);
    return {f.data(), f.data() + f.size()};
  }
  // power iteration on (c I - L) with the constant vector projected out
  std::vector<double> deg(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t x = comp[i];
    for (std::size_t e = g.start[x]; e < g.start[x + 1]; ++e) deg[i] += g.weight[e];
  }
  const double shift = 2.0 * *std::max_element(deg.begin(), deg.end());
  std::vector<double> x(k), y(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = std::cos(static_cast<double>(i) * 1.618) + 1e-3 * static_cast<double>(i % 7);
  for (int iter = 0; iter < 3000; ++iter) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(k);
    for (double& v : x) v -= mean;
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (double& v : x) v /= norm;
    for (std::size_t i = 0; i < k; ++i) {
      double lx = deg[i] * x[i];
      const std::size_t u = comp[i];
      for (std::size_t e = g.start[u]; e < g.start[u + 1]; ++e) lx -= g.weight[e] * x[pos[g.adj[e]]];
      y[i] = shift * x[i] - lx;
    }
    std::swap(x, y);
  }
  return x;
}

Candidate spectral_sweep(const Local& g, double alpha) {
  const auto comp = largest_component(g);
  const std::size_t k = comp.size();
  const auto f = fiedler_vector(g, comp);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });

  std::vector<std::size_t> side(g.size(), 2);  // 2 = outside the component
  Candidate best;
  const std::size_t lo = std::max<std::size_t>(1, k / 6);
  const std::size_t hi = std::max(lo + 1, k - k / 6);
  const std::size_t step = std::max<std::size_t>(1, (hi - lo) / 64);
  for (std::size_t cut = lo; cut < hi && cut < k; cut += step) {
    for (std::size_t i = 0; i < k; ++i) side[comp[order[i]]] = i < cut ? 0 : 1;
    // cover the cut edges with the endpoints on one side; keep the smaller
    std::vector<std::size_t> cover[2];
    for (std::size_t x : comp) {
      for (std::size_t e = g.start[x]; e < g.start[x + 1]; ++e) {
        const std::size_t y = g.adj[e];
        if (side[y] != 2 && side[y] != side[x]) {
          cover[side[x]].push_back(x);
          break;
        }
      }
    }
    consider(g, cover[0].size() <= cover[1].size() ? cover[0] : cover[1], alpha, best);
  }
  return best;
}

}  // namespace

bool is_balanced_separator(std::span<const Vertex> vertices, std::span<const Edge> edges,
                           std::span<const Vertex> removed, double alpha) {
  const Local g(vertices, edges);
  std::vector<char> mask(g.size(), 0);
  for (Vertex v : removed) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it != vertices.end() && *it == v) mask[static_cast<std::size_t>(it - vertices.begin())] = 1;
  }
  return imbalance(g, mask, alpha) != SIZE_MAX;
}

std::vector<Vertex> find_separator(std::span<const Vertex> vertices, std::span<const Edge> edges,
                                   const SeparatorStrategy& strategy) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty graph has no separator");
  const Local g(vertices, edges);
  const std::vector<char> none(g.size(), 0);
  if (imbalance(g, none, strategy.alpha) != SIZE_MAX) return {};

  Candidate found;
  switch (strategy.kind) {
    case SeparatorStrategy::Kind::Grid: {
      std::size_t cols = strategy.grid_cols;
      if (cols == 0) cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(vertices.back()) + 1.0)));
      found = grid_cut(g, cols, strategy.alpha);
      break;
    }
    case SeparatorStrategy::Kind::BfsLevel: found = bfs_levels(g, strategy.alpha); break;
    case SeparatorStrategy::Kind::Spectral: found = spectral_sweep(g, strategy.alpha); break;
  }
  const double budget = strategy.beta * std::sqrt(static_cast<double>(g.size()));
  if (found.balance == SIZE_MAX || static_cast<double>(found.members.size()) > budget) {
    throw Error(ErrorCode::NoBalancedSeparator,
                to_string(strategy.kind) + " strategy found no balanced separator within " +
                    std::to_string(static_cast<std::size_t>(budget)) + " vertices on " +
                    std::to_string(g.size()) + " vertices");
  }
  std::vector<Vertex> out;
  out.reserve(found.members.size());
  for (std::size_t x : found.members) out.push_back(vertices[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> find_separator(const WeightedGraph& g, const SeparatorStrategy& strategy) {
  std::vector<Vertex> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), Vertex{0});
  return find_separator(ids, g.edges(), strategy);
}

}  // namespace effres
